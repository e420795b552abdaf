#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "latsym/errors.hpp"
#include "latsym/jacobi.hpp"
#include "latsym/matrix.hpp"
#include "latsym/rational.hpp"
#include "latsym/sites.hpp"
#include "latsym/symmetry.hpp"
#include "latsym/walks.hpp"

namespace latsym {

struct GesOptions {
    /// tau_cluster = cluster_factor * max(1, max|H|): eigenvalues closer
    /// than this are treated as one degenerate cluster.
    double cluster_factor = 1e-8;
    double tol_basis = 1e-8;
    double tol_ges = 1e-8;
    double tol_commute = 1e-4;
    double jacobi_tol = 1e-12;
};

/// Orthonormal eigenbasis organized by local parity with respect to a
/// cospectral pair (u, v): per eigenvalue cluster at most one vector of
/// even parity (+), at most one of odd parity (-), and the remainder
/// vanishing on both sites (0).
struct ParityVector {
    std::vector<double> vec;
    int parity = 0;  // +1, -1, or 0
};

struct EigenCluster {
    double value = 0.0;
    std::vector<ParityVector> basis;
};

struct ParityBasis {
    int u = 0, v = 0;
    std::vector<EigenCluster> clusters;
    double h_norm_max = 0.0;
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double vec_norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

inline void axpy(std::vector<double>& y, double alpha, const std::vector<double>& x) {
    for (size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

inline Matrix<double> to_double_matrix(const Hamiltonian& h) {
    return h.map([](const Rational& r) { return to_double(r); });
}

} // namespace detail

/// Builds the parity eigenbasis for a cospectral pair by projecting
/// |u> + |v> and |u> - |v> onto each (numerically clustered) eigenspace
/// and completing with vectors orthogonal to both projections.  The
/// normalized projections automatically satisfy the sign convention
/// <u|phi> > 0.
inline ParityBasis eisenberg_basis(const Hamiltonian& h, int u, int v,
                                   const GesOptions& opt = {}) {
    const int n = h.rows();
    detail::require_input(u >= 0 && u < n && v >= 0 && v < n && u != v,
                          "pair sites must be distinct and in range");
    detail::require_pre(h.is_symmetric(),
                        "parity basis construction needs a real symmetric matrix");
    detail::require_pre(cospectral_sites(h, u, v),
                        "sites " + std::to_string(u + 1) + " and " + std::to_string(v + 1) +
                            " are not cospectral");

    const Matrix<double> hd = detail::to_double_matrix(h);
    const EigenDecomposition eig = jacobi_eigensolver(hd, opt.jacobi_tol);

    ParityBasis out;
    out.u = u;
    out.v = v;
    out.h_norm_max = entry_norm_max(hd);
    const double scale = std::max(1.0, out.h_norm_max);
    const double tau_cluster = opt.cluster_factor * scale;

    size_t start = 0;
    while (start < eig.values.size()) {
        size_t stop = start + 1;
        while (stop < eig.values.size() &&
               eig.values[stop] - eig.values[stop - 1] <= tau_cluster)
            ++stop;

        EigenCluster cluster;
        double mean = 0.0;
        for (size_t k = start; k < stop; ++k) mean += eig.values[k];
        cluster.value = mean / static_cast<double>(stop - start);

        // project |u> +- |v> onto the eigenspace
        std::vector<double> plus(static_cast<size_t>(n), 0.0);
        std::vector<double> minus(static_cast<size_t>(n), 0.0);
        for (size_t k = start; k < stop; ++k) {
            const auto& phi = eig.vectors[k];
            detail::axpy(plus, phi[static_cast<size_t>(u)] + phi[static_cast<size_t>(v)], phi);
            detail::axpy(minus, phi[static_cast<size_t>(u)] - phi[static_cast<size_t>(v)], phi);
        }
        std::vector<std::vector<double>> accepted;
        auto push_parity = [&](std::vector<double>& w, int parity) {
            const double norm = detail::vec_norm(w);
            if (norm <= opt.tol_basis) return;
            for (double& x : w) x /= norm;
            accepted.push_back(w);
            cluster.basis.push_back({std::move(w), parity});
        };
        push_parity(plus, +1);
        push_parity(minus, -1);

        // complete the cluster with zero-parity vectors: orthogonalize the
        // eigenvectors against what was accepted, largest residual first
        std::vector<std::vector<double>> residual;
        for (size_t k = start; k < stop; ++k) {
            std::vector<double> r = eig.vectors[k];
            for (const auto& b : accepted) detail::axpy(r, -detail::dot(b, r), b);
            residual.push_back(std::move(r));
        }
        while (cluster.basis.size() < stop - start) {
            size_t best = 0;
            double best_norm = -1.0;
            for (size_t i = 0; i < residual.size(); ++i) {
                const double nn = detail::vec_norm(residual[i]);
                if (nn > best_norm) {
                    best_norm = nn;
                    best = i;
                }
            }
            detail::check(best_norm > opt.tol_basis,
                          "degenerate eigenspace completion lost rank");
            std::vector<double> z = residual[best];
            for (double& x : z) x /= best_norm;
            for (auto& r : residual) detail::axpy(r, -detail::dot(z, r), z);
            if (std::abs(z[static_cast<size_t>(u)]) > opt.tol_basis ||
                std::abs(z[static_cast<size_t>(v)]) > opt.tol_basis)
                throw numerical_error("zero-parity vector fails to vanish on the pair: |z_u| = " +
                                      std::to_string(std::abs(z[static_cast<size_t>(u)])) +
                                      ", |z_v| = " +
                                      std::to_string(std::abs(z[static_cast<size_t>(v)])));
            accepted.push_back(z);
            cluster.basis.push_back({std::move(z), 0});
        }

        // eigenequation quality per basis vector
        for (const auto& pv : cluster.basis) {
            std::vector<double> r(static_cast<size_t>(n), 0.0);
            for (int i = 0; i < n; ++i) {
                double s = 0.0;
                for (int j = 0; j < n; ++j) s += hd(i, j) * pv.vec[static_cast<size_t>(j)];
                r[static_cast<size_t>(i)] = s - cluster.value * pv.vec[static_cast<size_t>(i)];
            }
            double rmax = 0.0;
            for (double x : r) rmax = std::max(rmax, std::abs(x));
            if (rmax > opt.tol_basis * scale)
                throw numerical_error("parity basis vector violates the eigenequation: residual " +
                                      std::to_string(rmax));
        }

        out.clusters.push_back(std::move(cluster));
        start = stop;
    }
    return out;
}

/// Exchange symmetry for a cospectral pair, with its defining residuals.
struct GesMatrix {
    Matrix<double> q;
    int u = 0, v = 0;
    double residual_involution = 0.0;   // max |(Q^2 - I)_ij|
    double residual_symmetry = 0.0;     // max |(Q^T - Q)_ij|
    double residual_commutation = 0.0;  // max |(QH - HQ)_ij|
    double residual_swap = 0.0;         // max |(Q e_u - e_v)_i|
    bool is_signed_permutation = false;
};

/// Q = P_+ + P_0 - P_-, assembled as I - 2 P_- from the parity basis.
/// All four defining residuals are checked against tol_ges.
inline GesMatrix build_ges(const Hamiltonian& h, int u, int v, const GesOptions& opt = {}) {
    const ParityBasis basis = eisenberg_basis(h, u, v, opt);
    const int n = h.rows();

    size_t total = 0;
    Matrix<double> q = Matrix<double>::identity(n);
    for (const auto& cluster : basis.clusters)
        for (const auto& pv : cluster.basis) {
            ++total;
            if (pv.parity != -1) continue;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    q(i, j) -= 2.0 * pv.vec[static_cast<size_t>(i)] * pv.vec[static_cast<size_t>(j)];
        }
    detail::check(total == static_cast<size_t>(n), "parity basis is not complete");

    GesMatrix out;
    out.q = q;
    out.u = u;
    out.v = v;

    const Matrix<double> hd = detail::to_double_matrix(h);
    out.residual_involution = entry_norm_max(q * q - Matrix<double>::identity(n));
    out.residual_symmetry = entry_norm_max(q.transpose() - q);
    out.residual_commutation = entry_norm_max(q * hd - hd * q);
    double swap_res = 0.0;
    for (int i = 0; i < n; ++i)
        swap_res = std::max(swap_res, std::abs(q(i, u) - (i == v ? 1.0 : 0.0)));
    out.residual_swap = swap_res;

    const double scale = std::max(1.0, basis.h_norm_max);
    if (out.residual_involution > opt.tol_ges || out.residual_symmetry > opt.tol_ges ||
        out.residual_commutation > opt.tol_ges * scale || out.residual_swap > opt.tol_ges)
        throw numerical_error(
            "exchange symmetry residuals exceed tolerance: involution " +
            std::to_string(out.residual_involution) + ", symmetry " +
            std::to_string(out.residual_symmetry) + ", commutation " +
            std::to_string(out.residual_commutation) + ", swap " +
            std::to_string(out.residual_swap));

    out.is_signed_permutation = [&] {
        for (int i = 0; i < n; ++i) {
            int hits = 0;
            for (int j = 0; j < n; ++j) {
                const double a = std::abs(q(i, j));
                if (a > opt.tol_ges && std::abs(a - 1.0) > opt.tol_ges) return false;
                if (a > 0.5) ++hits;
            }
            if (hits != 1) return false;
        }
        return true;
    }();
    return out;
}

/// Exact rational counterpart of build_ges: the odd-parity subspace for
/// the pair (u, v) is the Krylov span of |u> - |v> under H, so
/// Q = I - 2 P with P the exact orthogonal projector onto that span.
/// The returned matrix satisfies Q^2 = I, Q^T = Q, [Q, H] = 0 and
/// Q|u> = |v> exactly.
inline Matrix<Rational> exact_exchange_involution(const Hamiltonian& h, int u, int v) {
    const int n = h.rows();
    detail::require_input(u >= 0 && u < n && v >= 0 && v < n && u != v,
                          "pair sites must be distinct and in range");
    detail::require_pre(h.is_symmetric(),
                        "exact exchange construction needs a real symmetric matrix");
    detail::require_pre(cospectral_sites(h, u, v),
                        "sites " + std::to_string(u + 1) + " and " + std::to_string(v + 1) +
                            " are not cospectral");

    // Krylov vectors w, Hw, H^2 w, ... as columns; keep an independent set.
    std::vector<std::vector<Rational>> basis;
    std::vector<Rational> w(static_cast<size_t>(n), Rational(0));
    w[static_cast<size_t>(u)] = 1;
    w[static_cast<size_t>(v)] = -1;
    std::vector<std::vector<Rational>> echelon;  // reduced copies for rank tests
    for (int k = 0; k < n; ++k) {
        std::vector<Rational> reduced = w;
        for (const auto& e : echelon) {
            // eliminate with the leading entry of e
            size_t lead = 0;
            while (lead < e.size() && e[lead] == 0) ++lead;
            if (lead < e.size() && reduced[lead] != 0) {
                const Rational f = reduced[lead] / e[lead];
                for (size_t i = 0; i < reduced.size(); ++i) reduced[i] -= f * e[i];
            }
        }
        bool zero = true;
        for (const auto& x : reduced)
            if (x != 0) { zero = false; break; }
        if (!zero) {
            basis.push_back(w);
            echelon.push_back(std::move(reduced));
        }
        if (k + 1 < n) {
            std::vector<Rational> next(static_cast<size_t>(n), Rational(0));
            for (int i = 0; i < n; ++i) {
                Rational s(0);
                for (int j = 0; j < n; ++j) s += h(i, j) * w[static_cast<size_t>(j)];
                next[static_cast<size_t>(i)] = s;
            }
            w = std::move(next);
        }
    }

    const int r = static_cast<int>(basis.size());
    Matrix<Rational> k(n, r);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < n; ++i) k(i, j) = basis[static_cast<size_t>(j)][static_cast<size_t>(i)];
    const Matrix<Rational> gram = k.transpose() * k;
    const Matrix<Rational> proj = k * field_inverse(gram) * k.transpose();

    Matrix<Rational> q = Matrix<Rational>::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q(i, j) -= Rational(2) * proj(i, j);

    detail::check(q * q == Matrix<Rational>::identity(n), "exact exchange is not an involution");
    detail::check(q.is_symmetric(), "exact exchange is not symmetric");
    detail::check(q * h == h * q, "exact exchange does not commute with H");
    for (int i = 0; i < n; ++i)
        detail::check(q(i, u) == (i == v ? Rational(1) : Rational(0)),
                      "exact exchange does not swap the pair");
    return q;
}

/// Two exchange symmetries guaranteed not to commute when S carries a
/// dihedral latent symmetry of order > 2: the outer pair (s1, s3) and the
/// adjacent pair (s1, s2) along a latent cycle through S.  The middle
/// site s2 is a walk singlet for the outer pair, which forces
/// Q^{(s1,s3)} to act as the identity on it.
struct NoncommutingGesPair {
    GesMatrix outer;     // swaps s1, s3
    GesMatrix adjacent;  // swaps s1, s2
    double commutator_norm = 0.0;
    int s1 = 0, s2 = 0, s3 = 0;
};

inline NoncommutingGesPair noncommuting_ges_pair(const Hamiltonian& h, const SiteSet& sites,
                                                 const GesOptions& opt = {}) {
    detail::require_pre(sites.size() > 2,
                        "non-commuting exchange pairs need a latent cycle of length > 2 (got " +
                            std::to_string(sites.size()) + " sites)");
    const SymmetryGroup g = latent_permutation_group(h, sites);
    detail::require_pre(g.tag() == GroupTag::dihedral &&
                            g.tag_n() == static_cast<size_t>(sites.size()),
                        "site set does not carry a dihedral latent symmetry of its full size "
                        "(group found: " + g.tag_string() + ")");

    // a full cycle through the site positions fixes the labeling s1 s2 s3
    const Permutation* rot = nullptr;
    for (const auto& p : g.elements())
        if (p.order() == sites.size() && p.cycles().size() == 1) {
            rot = &p;
            break;
        }
    detail::check(rot != nullptr, "dihedral group without a full cycle");
    const auto cyc = rot->cycles()[0];
    const int s1 = sites[cyc[0]], s2 = sites[cyc[1]], s3 = sites[cyc[2]];

    detail::require_pre(walk_singlet_check(h, s1, s3, s2),
                        "middle site " + std::to_string(s2 + 1) +
                            " is not a walk singlet for the outer pair");

    NoncommutingGesPair out;
    out.s1 = s1;
    out.s2 = s2;
    out.s3 = s3;
    out.outer = build_ges(h, s1, s3, opt);
    out.adjacent = build_ges(h, s1, s2, opt);

    const Matrix<double>& q1 = out.outer.q;
    const Matrix<double>& q2 = out.adjacent.q;
    out.commutator_norm = entry_norm_max(q1 * q2 - q2 * q1);
    if (std::abs(q1(s2, s2) - 1.0) > opt.tol_ges)
        throw numerical_error("outer exchange fails to fix the walk singlet: (Q)_{s2,s2} = " +
                              std::to_string(q1(s2, s2)));
    if (out.commutator_norm <= opt.tol_commute)
        throw numerical_error("exchange pair commutator unexpectedly small: " +
                              std::to_string(out.commutator_norm));
    return out;
}

} // namespace latsym
