#pragma once

#include <algorithm>
#include <complex>
#include <utility>
#include <vector>

#include "latsym/charpoly.hpp"
#include "latsym/errors.hpp"
#include "latsym/matrix.hpp"
#include "latsym/numeric.hpp"
#include "latsym/polynomial.hpp"
#include "latsym/rational.hpp"
#include "latsym/rational_function.hpp"
#include "latsym/sites.hpp"

namespace latsym {

/// Isospectral reduction of a Hamiltonian onto a site set S:
///
///     R_S(H, lambda) = H_SS - H_SSbar (H_SbarSbar - lambda I)^{-1} H_SbarS.
///
/// Entries are rational functions of lambda; `poles` is the monic
/// det(lambda I - H_SbarSbar), whose roots are exactly the points where
/// the reduction is undefined.  Every entry denominator divides `poles`,
/// and every entry is proper (numerator degree <= denominator degree).
struct ReducedMatrix {
    Matrix<RationalFunction> entries;
    Polynomial poles;
    SiteSet sites;

    int dim() const { return entries.rows(); }

    void assert_invariants() const {
        for (int i = 0; i < entries.rows(); ++i)
            for (int j = 0; j < entries.cols(); ++j) {
                const RationalFunction& e = entries(i, j);
                detail::check(e.is_proper(), "reduced entry not bounded at infinity");
                detail::check(poles.divmod(e.den()).second.is_zero(),
                              "reduced entry denominator does not divide the pole polynomial");
            }
    }
};

namespace detail {

/// Shared setup: partitions H into the S / complement blocks.
struct Partition {
    std::vector<int> s, sbar;
    Matrix<Rational> h_ss, h_ssb, h_sbs, h_sbsb;
};

inline Partition partition_blocks(const Hamiltonian& h, const SiteSet& sites) {
    check(h.is_square(), "Hamiltonian must be square");
    require_input(!sites.empty(), "empty site set");
    sites.validate_for(h.rows());
    Partition p;
    p.s = sites.indices();
    p.sbar = sites.complement(h.rows());
    p.h_ss = h.submatrix(p.s, p.s);
    p.h_ssb = h.submatrix(p.s, p.sbar);
    p.h_sbs = h.submatrix(p.sbar, p.s);
    p.h_sbsb = h.submatrix(p.sbar, p.sbar);
    return p;
}

inline ReducedMatrix assemble(const SiteSet& sites, const Matrix<Rational>& h_ss,
                              const Matrix<Polynomial>& numerators, const Polynomial& q) {
    ReducedMatrix r;
    r.sites = sites;
    r.poles = q;
    r.entries = Matrix<RationalFunction>(h_ss.rows(), h_ss.cols());
    for (int i = 0; i < h_ss.rows(); ++i)
        for (int j = 0; j < h_ss.cols(); ++j)
            r.entries(i, j) = RationalFunction(Polynomial(h_ss(i, j)) * q + numerators(i, j), q);
    r.assert_invariants();
    return r;
}

} // namespace detail

/// Direct evaluation of the reduction via the resolvent adjugate:
/// R_S = H_SS + H_SSbar adj(lambda I - B) H_SbarS / det(lambda I - B).
inline ReducedMatrix isospectral_reduce(const Hamiltonian& h, const SiteSet& sites) {
    const auto p = detail::partition_blocks(h, sites);
    if (p.sbar.empty()) {
        // Nothing eliminated: the reduction is H_SS itself, pole-free.
        return detail::assemble(sites, p.h_ss,
                                Matrix<Polynomial>(sites.size(), sites.size()), Polynomial(1));
    }
    const CharpolyResult cp = faddeev_leverrier(p.h_sbsb);
    const Matrix<Polynomial> adj = cp.adjugate();
    const Matrix<Polynomial> num =
        p.h_ssb.map([](const Rational& v) { return Polynomial(v); }) * adj *
        p.h_sbs.map([](const Rational& v) { return Polynomial(v); });
    return detail::assemble(sites, p.h_ss, num, cp.resolvent_den);
}

/// Second, independent computation path.  With u(x) = det(xI - B) computed
/// by the Berkowitz recursion, the characteristic polynomial of B - lambda I
/// is sum_k c_k(lambda) x^k with c_k(lambda) = sum_{j>=k} u_j C(j,k)
/// lambda^{j-k}, and Cayley-Hamilton turns the resolvent into the finite sum
///
///   R_S = H_SS + sum_{k=1}^{|Sbar|} (c_k/c_0) sum_{n=0}^{k-1}
///         C(k-1,n) (-lambda)^{k-1-n} H_SSbar B^n H_SbarS.
inline ReducedMatrix reduce_via_charpoly(const Hamiltonian& h, const SiteSet& sites) {
    const auto p = detail::partition_blocks(h, sites);
    const int s = sites.size();
    if (p.sbar.empty())
        return detail::assemble(sites, p.h_ss, Matrix<Polynomial>(s, s), Polynomial(1));

    const int m = static_cast<int>(p.sbar.size());
    const Polynomial u = berkowitz_charpoly(p.h_sbsb);

    // c_k(lambda), k = 0..m; c_0 reproduces det(lambda I - B).
    std::vector<Polynomial> c(static_cast<size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) {
        std::vector<Rational> coeffs(static_cast<size_t>(m - k) + 1, Rational(0));
        for (int j = k; j <= m; ++j)
            coeffs[static_cast<size_t>(j - k)] = u.coeff(j) * Rational(binomial(j, k));
        c[static_cast<size_t>(k)] = Polynomial(std::move(coeffs));
    }
    detail::check(c[0] == u, "constant charpoly coefficient must equal det(lambda I - B)");

    // Walk matrices W_n = H_SSbar B^n H_SbarS, n = 0..m-1.
    std::vector<Matrix<Rational>> w;
    w.reserve(static_cast<size_t>(m));
    Matrix<Rational> cur = p.h_ssb;
    for (int n = 0; n < m; ++n) {
        w.push_back(cur * p.h_sbs);
        if (n + 1 < m) cur = cur * p.h_sbsb;
    }

    Matrix<Polynomial> num(s, s);
    for (int k = 1; k <= m; ++k)
        for (int n = 0; n < k; ++n) {
            Polynomial coeff = c[static_cast<size_t>(k)] *
                               Polynomial::monomial(Rational(binomial(k - 1, n)) *
                                                        ((k - 1 - n) % 2 == 0 ? 1 : -1),
                                                    k - 1 - n);
            const Matrix<Rational>& wn = w[static_cast<size_t>(n)];
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j)
                    if (wn(i, j) != 0) num(i, j) += coeff * wn(i, j);
        }
    return detail::assemble(sites, p.h_ss, num, c[0]);
}

/// Exact evaluation of the reduced matrix at a rational point.
/// Refuses points in the pole set and names the vanishing factor.
inline Matrix<Rational> evaluate_reduction(const ReducedMatrix& r, const Rational& x) {
    if (r.poles.evaluate(x) == 0) {
        for (const auto& [factor, mult] : squarefree_decomposition(r.poles))
            if (factor.evaluate(x) == 0)
                throw precondition_error("lambda = " + format_rational(x) +
                                         " is a pole of the reduction (root of " +
                                         factor.to_string() + ")");
        detail::check(false, "pole without vanishing squarefree factor");
    }
    return r.entries.map([&](const RationalFunction& e) { return e.evaluate(x); });
}

/// Largest row sum of |B| entries: a cheap exact bound on the spectral
/// radius of the eliminated block.
inline Rational complement_norm_bound(const Hamiltonian& h, const SiteSet& sites) {
    const auto p = detail::partition_blocks(h, sites);
    Rational best(0);
    for (int i = 0; i < p.h_sbsb.rows(); ++i) {
        Rational row(0);
        for (int j = 0; j < p.h_sbsb.cols(); ++j) row += abs(p.h_sbsb(i, j));
        if (row > best) best = row;
    }
    return best;
}

/// Truncated Neumann series of the reduction, evaluated exactly at a
/// rational point lambda0 with |lambda0| beyond the complement norm bound:
///
///   H_SS + sum_{j=1}^{k_max} lambda0^{-j} H_SSbar B^{j-1} H_SbarS.
///
/// The error against evaluate_reduction contracts at least geometrically
/// with ratio bound/|lambda0| per added order.
inline Matrix<Rational> neumann_truncation(const Hamiltonian& h, const SiteSet& sites,
                                           int k_max, const Rational& lambda0) {
    detail::require_input(k_max >= 0, "negative truncation order");
    const auto p = detail::partition_blocks(h, sites);
    const Rational bound = complement_norm_bound(h, sites);
    detail::require_pre(abs(lambda0) > bound,
                        "|lambda0| = " + format_rational(abs(lambda0)) +
                            " is not beyond the complement norm bound " +
                            format_rational(bound) + "; the series need not converge");
    Matrix<Rational> acc = p.h_ss;
    if (p.sbar.empty()) return acc;
    Matrix<Rational> cur = p.h_ssb;  // H_SSbar B^{j-1} accumulates here
    Rational scale(1);
    for (int j = 1; j <= k_max; ++j) {
        scale /= lambda0;
        acc = acc + scale * (cur * p.h_sbs);
        if (j < k_max) cur = cur * p.h_sbsb;
    }
    return acc;
}

/// Eigenvalues of H seen through the reduced matrix: solutions of
/// det(R_S(H, lambda) - lambda I) = 0 over the domain of R_S.
struct NonlinearSpectrum {
    /// Polynomial whose roots (with multiplicity) are the nonlinear
    /// eigenvalues; it divides det(lambda I - H) exactly.
    Polynomial cleared;
    /// Squarefree decomposition of `cleared`.
    std::vector<std::pair<Polynomial, int>> multiplicity_structure;
    /// The part of det(lambda I - H) invisible to the reduction because it
    /// shares roots with the eliminated block.
    Polynomial shared_with_complement;
    bool spectrum_coincides;
    /// Numeric roots of `cleared` with exact multiplicities, for reporting.
    std::vector<std::pair<std::complex<double>, int>> roots;
};

inline NonlinearSpectrum nonlinear_spectrum(const Hamiltonian& h, const SiteSet& sites) {
    const int s = sites.size();
    const ReducedMatrix r = isospectral_reduce(h, sites);
    const Polynomial q = r.poles;
    const Polynomial p_h = faddeev_leverrier(h).resolvent_den;

    // Clear denominators: D(lambda) = det(q (lambda I - H_SS) - P) with
    // P the adjugate-numerator block, i.e. D = q^s det(lambda I - R_S).
    Matrix<Polynomial> cleared_mat(s, s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            const RationalFunction& e = r.entries(i, j);
            // entry scaled up to the common denominator q
            Polynomial scaled = e.num() * q.exact_div(e.den());
            Polynomial diag = (i == j) ? Polynomial::variable() * q : Polynomial{};
            cleared_mat(i, j) = diag - scaled;
        }
    const Polynomial d = det_bareiss(cleared_mat);

    // Schur complement identity det(lambda I - H) =
    // det(lambda I - B) det(lambda I - R_S), in cleared form.
    detail::check(d == p_h * q.pow_u(static_cast<unsigned>(s - 1)),
                  "Schur determinant identity failed");

    NonlinearSpectrum out;
    out.cleared = p_h;
    for (;;) {
        const Polynomial g = poly_gcd(out.cleared, q);
        if (g.degree() <= 0) break;
        out.cleared = out.cleared.exact_div(g);
    }
    out.shared_with_complement = p_h.exact_div(out.cleared);
    out.spectrum_coincides = out.shared_with_complement.degree() == 0;
    if (out.cleared.degree() > 0)
        out.multiplicity_structure = squarefree_decomposition(out.cleared);

    int degree_sum = 0;
    for (const auto& [factor, mult] : out.multiplicity_structure) {
        degree_sum += factor.degree() * mult;
        for (const auto& root : durand_kerner_roots(factor)) out.roots.emplace_back(root, mult);
    }
    detail::check(degree_sum == out.cleared.degree(),
                  "multiplicity structure does not account for every root");
    std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) {
        if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
        return a.first.imag() < b.first.imag();
    });
    return out;
}

/// Verifies det(H - x) = det(B - x) * det(R_S(x) - x I) as an identity of
/// exact rational functions, with B the eliminated block.  Unlike the
/// cleared-form check inside nonlinear_spectrum, this evaluates the
/// right-hand determinant directly over the rational-function field.
inline bool schur_determinant_identity_holds(const Hamiltonian& h, const SiteSet& sites) {
    const auto p = detail::partition_blocks(h, sites);
    const ReducedMatrix r = isospectral_reduce(h, sites);

    const RationalFunction x{Polynomial::variable()};
    Matrix<RationalFunction> m(sites.size(), sites.size());
    for (int i = 0; i < sites.size(); ++i)
        for (int j = 0; j < sites.size(); ++j)
            m(i, j) = r.entries(i, j) - (i == j ? x : RationalFunction());

    const RationalFunction lhs{faddeev_leverrier(h).char_poly};
    const RationalFunction complement_part{
        p.sbar.empty() ? Polynomial(1) : faddeev_leverrier(p.h_sbsb).char_poly};
    return lhs == complement_part * det_field(m);
}

} // namespace latsym
