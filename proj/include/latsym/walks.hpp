#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "latsym/errors.hpp"
#include "latsym/matrix.hpp"
#include "latsym/rational.hpp"
#include "latsym/sites.hpp"

namespace latsym {

/// The sequence (H^k)_SS for k = 0 .. N-1, N the full system size.
/// By Cayley-Hamilton every higher power of H is a linear combination of
/// H^0 .. H^{N-1}, so any statement linear in the powers (commutation,
/// entry equalities) holds for all k once it holds up to N-1.
struct WalkProfile {
    SiteSet sites;
    std::vector<Matrix<Rational>> blocks;  // blocks[k] = (H^k)_SS

    size_t levels() const { return blocks.size(); }
};

inline WalkProfile walk_profile(const Hamiltonian& h, const SiteSet& sites) {
    detail::check(h.is_square(), "Hamiltonian must be square");
    detail::require_input(!sites.empty(), "empty site set");
    sites.validate_for(h.rows());
    const int n = h.rows();
    WalkProfile w;
    w.sites = sites;
    w.blocks.reserve(static_cast<size_t>(n));
    Matrix<Rational> power = Matrix<Rational>::identity(n);
    for (int k = 0; k < n; ++k) {
        w.blocks.push_back(power.submatrix(sites.indices(), sites.indices()));
        if (k + 1 < n) power = power * h;
    }
    return w;
}

/// All-sites walk profile, shared by the cospectrality helpers.
inline std::vector<Matrix<Rational>> full_powers(const Hamiltonian& h) {
    detail::check(h.is_square(), "Hamiltonian must be square");
    std::vector<Matrix<Rational>> powers;
    const int n = h.rows();
    powers.reserve(static_cast<size_t>(n));
    Matrix<Rational> power = Matrix<Rational>::identity(n);
    for (int k = 0; k < n; ++k) {
        powers.push_back(power);
        if (k + 1 < n) power = power * h;
    }
    return powers;
}

/// Sites u, v are cospectral iff their diagonal walk sequences agree:
/// (H^k)_uu = (H^k)_vv for all k (k <= N-1 suffices).
inline bool cospectral_sites(const std::vector<Matrix<Rational>>& powers, int u, int v) {
    for (const auto& p : powers)
        if (p(u, u) != p(v, v)) return false;
    return true;
}

inline bool cospectral_sites(const Hamiltonian& h, int u, int v) {
    return cospectral_sites(full_powers(h), u, v);
}

/// Partition of all sites into cospectrality classes, with the diagonal
/// walk sequences kept as the certificate.
struct CospectralPartition {
    std::vector<std::vector<int>> classes;               // each sorted; ordered by least member
    std::vector<std::vector<Rational>> diagonal_walks;   // per site: ((H^k)_ii)_k
    int class_of(int site) const {
        for (size_t c = 0; c < classes.size(); ++c)
            for (int s : classes[c])
                if (s == site) return static_cast<int>(c);
        return -1;
    }
};

inline CospectralPartition cospectral_partition(const Hamiltonian& h) {
    const auto powers = full_powers(h);
    const int n = h.rows();
    CospectralPartition out;
    out.diagonal_walks.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (const auto& p : powers) out.diagonal_walks[static_cast<size_t>(i)].push_back(p(i, i));

    std::vector<char> done(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        if (done[static_cast<size_t>(i)]) continue;
        std::vector<int> cls{i};
        done[static_cast<size_t>(i)] = 1;
        for (int j = i + 1; j < n; ++j)
            if (!done[static_cast<size_t>(j)] &&
                out.diagonal_walks[static_cast<size_t>(i)] ==
                    out.diagonal_walks[static_cast<size_t>(j)]) {
                cls.push_back(j);
                done[static_cast<size_t>(j)] = 1;
            }
        out.classes.push_back(std::move(cls));
    }
    return out;
}

/// A site w is a walk singlet with respect to a cospectral pair (u, v)
/// iff (H^k)_{w,u} = (H^k)_{w,v} for all k <= N-1.
inline bool walk_singlet_check(const Hamiltonian& h, int u, int v, int w) {
    const int n = h.rows();
    detail::require_input(u >= 0 && u < n && v >= 0 && v < n && w >= 0 && w < n,
                          "site index out of range");
    const auto powers = full_powers(h);
    detail::require_pre(cospectral_sites(powers, u, v),
                        "sites " + std::to_string(u + 1) + " and " + std::to_string(v + 1) +
                            " are not cospectral");
    for (const auto& p : powers)
        if (p(w, u) != p(w, v)) return false;
    return true;
}

} // namespace latsym
