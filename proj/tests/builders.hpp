#pragma once

// Hand-rolled graph builders used as independent oracles across the test
// suites.  These are deliberately written from scratch (not via the
// library's fixture generators) so that fixture code is cross-checked
// against a second construction.

#include <random>
#include <vector>

#include "latsym/rational.hpp"
#include "latsym/sites.hpp"

namespace testutil {

using latsym::Hamiltonian;
using latsym::Rational;

inline void couple(Hamiltonian& h, int i, int j, const Rational& v) {
    h(i - 1, j - 1) = v;  // 1-based convenience
    h(j - 1, i - 1) = v;
}

/// Six sites: a triangle {1,2,3} (coupling h3, on-site v1) and three
/// mutually uncoupled satellites {4,5,6} (on-site v2), cross-coupled in a
/// chiral pattern: satellite 3+i takes h1 from corner i and h2 from
/// corner i-1 (cyclically).
inline Hamiltonian two_triangle(const Rational& h1, const Rational& h2, const Rational& h3,
                                const Rational& v1, const Rational& v2) {
    Hamiltonian h(6, 6);
    for (int i = 1; i <= 3; ++i) h(i - 1, i - 1) = v1;
    for (int i = 4; i <= 6; ++i) h(i - 1, i - 1) = v2;
    couple(h, 1, 2, h3);
    couple(h, 2, 3, h3);
    couple(h, 3, 1, h3);
    couple(h, 1, 4, h1);
    couple(h, 2, 5, h1);
    couple(h, 3, 6, h1);
    couple(h, 1, 5, h2);
    couple(h, 2, 6, h2);
    couple(h, 3, 4, h2);
    return h;
}

inline Hamiltonian path_graph(int n) {
    Hamiltonian h(n, n);
    for (int i = 1; i < n; ++i) couple(h, i, i + 1, Rational(1));
    return h;
}

inline Hamiltonian ring_graph(int n) {
    Hamiltonian h = path_graph(n);
    if (n > 2) couple(h, n, 1, Rational(1));
    return h;
}

/// Ring of n sites (coupling h3, on-site v1) with one satellite per ring
/// site (on-site v2, no satellite-satellite coupling): satellite n+i takes
/// h1 from ring site i and h2 from ring site i+1 (cyclically).  For
/// h1 != h2 the only global automorphisms are the n rotations.  n = 3
/// reproduces two_triangle after the relabeling (2 3)(5 6), which flips
/// the chirality of the cross pattern.
inline Hamiltonian decorated_ring(int n, const Rational& h1, const Rational& h2,
                                  const Rational& h3, const Rational& v1,
                                  const Rational& v2) {
    Hamiltonian h(2 * n, 2 * n);
    for (int i = 1; i <= n; ++i) {
        h(i - 1, i - 1) = v1;
        h(n + i - 1, n + i - 1) = v2;
        couple(h, i, i % n + 1, h3);
        couple(h, i, n + i, h1);
        couple(h, i % n + 1, n + i, h2);
    }
    return h;
}

inline Rational random_rational(std::mt19937& rng, int lo = -5, int hi = 5,
                                bool nonzero = false) {
    std::uniform_int_distribution<int> num(lo, hi);
    std::uniform_int_distribution<int> den(1, 3);
    for (;;) {
        Rational r(num(rng), den(rng));
        if (!nonzero || r != 0) return r;
    }
}

inline Hamiltonian random_symmetric(std::mt19937& rng, int n, int density_pct = 70) {
    Hamiltonian h(n, n);
    std::uniform_int_distribution<int> pct(0, 99);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            if (pct(rng) >= density_pct) continue;
            const Rational v = random_rational(rng);
            h(i, j) = v;
            h(j, i) = v;
        }
    return h;
}

inline latsym::SiteSet random_sites(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<int> idx;
    do {
        idx.clear();
        for (int i = 0; i < n; ++i)
            if (coin(rng)) idx.push_back(i);
    } while (idx.empty() || static_cast<int>(idx.size()) == n);
    return latsym::SiteSet(idx);
}

} // namespace testutil
