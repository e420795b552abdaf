#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "latsym/errors.hpp"
#include "latsym/matrix.hpp"
#include "latsym/rational.hpp"
#include "latsym/rational_function.hpp"
#include "latsym/reduction.hpp"
#include "latsym/sites.hpp"
#include "latsym/symmetry.hpp"

namespace latsym {

/// Copy of h with the coupling blocks between the site set and its
/// complement zeroed; the two diagonal blocks are kept in place.
inline Hamiltonian decoupled_matrix(const Hamiltonian& h, const SiteSet& sites) {
    sites.validate_for(h.rows());
    Hamiltonian out = h;
    for (int s : sites.indices())
        for (int c = 0; c < h.rows(); ++c)
            if (!sites.contains(c)) {
                out(s, c) = 0;
                out(c, s) = 0;
            }
    return out;
}

namespace detail {

inline std::string format_site_list(const SiteSet& s) {
    std::string out = "{";
    bool first = true;
    for (int v : s.to_one_based()) {
        if (!first) out += ",";
        out += std::to_string(v);
        first = false;
    }
    return out + "}";
}

} // namespace detail

/// Result of testing whether a subset of the complement couples
/// uniformly into the site set at every walk length.
struct MultipletCheck {
    bool ok = false;
    /// c_k = sum over members of (H Hbar^k)_{s,m}, independent of s in S.
    std::vector<Rational> constants;
    /// Smallest walk length at which uniformity fails, -1 when ok.
    int failed_level = -1;
};

/// A subset M of the complement is a multiplet for S when the column sums
/// (H Hbar^k 1_M)_s agree for every s in S and every k < N, where Hbar is
/// the decoupled matrix.  Uniform coupling at all walk lengths is exactly
/// what makes a new site attached evenly to M invisible to the latent
/// structure over S.
inline MultipletCheck check_multiplet(const Hamiltonian& h, const SiteSet& sites,
                                      const SiteSet& members) {
    const int n = h.rows();
    sites.validate_for(n);
    members.validate_for(n);
    detail::require_input(!sites.empty(), "site set must be nonempty");
    detail::require_input(!members.empty(), "candidate multiplet must be nonempty");
    for (int m : members.indices())
        detail::require_input(!sites.contains(m),
                              "candidate member " + std::to_string(m + 1) +
                                  " lies inside the site set");

    const Hamiltonian hbar = decoupled_matrix(h, sites);
    std::vector<Rational> y(static_cast<size_t>(n), Rational(0));
    for (int m : members.indices()) y[static_cast<size_t>(m)] = 1;

    MultipletCheck out;
    for (int k = 0; k < n; ++k) {
        // z = H y, restricted to the site set
        Rational c;
        bool have_c = false;
        for (int s : sites.indices()) {
            Rational z(0);
            for (int j = 0; j < n; ++j) z += h(s, j) * y[static_cast<size_t>(j)];
            if (!have_c) {
                c = z;
                have_c = true;
            } else if (z != c) {
                out.failed_level = k;
                return out;
            }
        }
        out.constants.push_back(c);
        if (k + 1 < n) {
            std::vector<Rational> next(static_cast<size_t>(n), Rational(0));
            for (int i = 0; i < n; ++i) {
                Rational s(0);
                for (int j = 0; j < n; ++j) s += hbar(i, j) * y[static_cast<size_t>(j)];
                next[static_cast<size_t>(i)] = s;
            }
            y = std::move(next);
        }
    }
    out.ok = true;
    return out;
}

inline bool is_multiplet(const Hamiltonian& h, const SiteSet& sites, const SiteSet& members) {
    return check_multiplet(h, sites, members).ok;
}

struct MultipletInfo {
    SiteSet members;
    bool minimal = false;  // contains no smaller multiplet
};

/// All multiplets for S with at most max_size members, ordered by size
/// then lexicographically.  The complement is capped at 16 sites to keep
/// the subset enumeration bounded.
inline std::vector<MultipletInfo> find_multiplets(const Hamiltonian& h, const SiteSet& sites,
                                                  int max_size) {
    const int n = h.rows();
    sites.validate_for(n);
    const std::vector<int> comp = sites.complement(n);
    const int c = static_cast<int>(comp.size());
    detail::require_input(max_size >= 1, "max_size must be at least 1");
    detail::require_pre(c <= 16, "complement has " + std::to_string(c) +
                                     " sites; subset search is limited to 16");
    max_size = std::min(max_size, c);

    std::vector<SiteSet> found;
    for (int size = 1; size <= max_size; ++size) {
        std::vector<int> pick(static_cast<size_t>(size));
        // lexicographic enumeration of size-element subsets of comp
        std::vector<int> at(static_cast<size_t>(size));
        for (int i = 0; i < size; ++i) at[static_cast<size_t>(i)] = i;
        while (true) {
            for (int i = 0; i < size; ++i)
                pick[static_cast<size_t>(i)] = comp[static_cast<size_t>(at[static_cast<size_t>(i)])];
            SiteSet candidate(pick);
            if (is_multiplet(h, sites, candidate)) found.push_back(std::move(candidate));
            int i = size - 1;
            while (i >= 0 && at[static_cast<size_t>(i)] == c - size + i) --i;
            if (i < 0) break;
            ++at[static_cast<size_t>(i)];
            for (int j = i + 1; j < size; ++j)
                at[static_cast<size_t>(j)] = at[static_cast<size_t>(j - 1)] + 1;
        }
    }

    auto subset_of = [](const SiteSet& a, const SiteSet& b) {
        for (int x : a.indices())
            if (!b.contains(x)) return false;
        return true;
    };
    std::vector<MultipletInfo> out;
    for (const auto& m : found) {
        bool minimal = true;
        for (const auto& smaller : found)
            if (smaller.size() < m.size() && subset_of(smaller, m)) {
                minimal = false;
                break;
            }
        out.push_back({m, minimal});
    }
    return out;
}

/// One uniform attachment: the new site couples with the given strength
/// to every member of the multiplet.  Strengths of overlapping terms add.
struct ExtensionTerm {
    SiteSet members;
    Rational strength;
};

struct ExtensionPlan {
    std::vector<ExtensionTerm> terms;
    Rational onsite = Rational(0);
};

/// Appends one site to the system, coupled uniformly to each multiplet in
/// the plan.  Every term is verified against the multiplet condition
/// first; a failing term is reported by name.
inline Hamiltonian extend_with_site(const Hamiltonian& h, const SiteSet& sites,
                                    const ExtensionPlan& plan) {
    const int n = h.rows();
    detail::require_input(!plan.terms.empty(), "extension plan has no attachment terms");
    for (const auto& term : plan.terms)
        detail::require_pre(is_multiplet(h, sites, term.members),
                            "attachment set " + detail::format_site_list(term.members) +
                                " is not a multiplet for sites " +
                                detail::format_site_list(sites));

    Hamiltonian out(n + 1, n + 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = h(i, j);
    out(n, n) = plan.onsite;
    for (const auto& term : plan.terms)
        for (int m : term.members.indices()) {
            out(n, m) += term.strength;
            out(m, n) += term.strength;
        }
    return out;
}

/// How an extension changed the reduced matrix over S.
struct ExtensionCheck {
    /// Difference of any one entry; meaningful when uniform_shift holds.
    RationalFunction shift;
    /// True when every entry of the reduced matrix moved by the same
    /// rational function, i.e. the difference is shift times all-ones.
    bool uniform_shift = false;
    /// True when every latent permutation of the original system is still
    /// a latent permutation of the extended one.
    bool group_preserved = false;
};

inline ExtensionCheck verify_extension(const Hamiltonian& h_old, const Hamiltonian& h_new,
                                       const SiteSet& sites) {
    const ReducedMatrix r_old = isospectral_reduce(h_old, sites);
    const ReducedMatrix r_new = isospectral_reduce(h_new, sites);

    ExtensionCheck out;
    out.shift = r_new.entries(0, 0) - r_old.entries(0, 0);
    out.uniform_shift = true;
    for (int i = 0; i < sites.size() && out.uniform_shift; ++i)
        for (int j = 0; j < sites.size(); ++j)
            if (r_new.entries(i, j) - r_old.entries(i, j) != out.shift) {
                out.uniform_shift = false;
                break;
            }

    const SymmetryGroup g_old = latent_permutation_group(h_old, sites);
    const SymmetryGroup g_new = latent_permutation_group(h_new, sites);
    out.group_preserved = g_new.contains_group(g_old);
    return out;
}

} // namespace latsym
