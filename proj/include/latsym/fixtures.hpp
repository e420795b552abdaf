#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "latsym/charpoly.hpp"
#include "latsym/errors.hpp"
#include "latsym/matrix.hpp"
#include "latsym/multiplets.hpp"
#include "latsym/polynomial.hpp"
#include "latsym/rational.hpp"
#include "latsym/sites.hpp"
#include "latsym/symmetry.hpp"

namespace latsym {

/// A ready-made coupling matrix together with the site set its latent
/// structure lives on.
struct NamedFixture {
    std::string name;
    Hamiltonian matrix;
    SiteSet sites;
    std::string description;
};

namespace detail {

inline void require_nonzero_couplings(std::initializer_list<Rational> values) {
    for (const auto& v : values)
        require_input(v != 0, "coupling strengths must be nonzero");
}

} // namespace detail

/// Six sites: a triangle (sites 1-3, mutual coupling h3, onsite v1) and
/// three satellites (sites 4-6, onsite v2).  Each triangle site couples
/// with h1 to one satellite and with h2 to another, arranged so that the
/// triangle keeps its full latent symmetry while the whole matrix keeps
/// only a 3-fold one when h1 != h2.
inline NamedFixture make_two_triangle(const Rational& h1, const Rational& h2, const Rational& h3,
                                      const Rational& v1, const Rational& v2) {
    detail::require_nonzero_couplings({h1, h2, h3});
    Hamiltonian h(6, 6);
    for (int i = 0; i < 3; ++i) {
        h(i, i) = v1;
        h(i + 3, i + 3) = v2;
        for (int j = i + 1; j < 3; ++j) {
            h(i, j) = h3;
            h(j, i) = h3;
        }
    }
    auto couple = [&](int a, int b, const Rational& v) {
        h(a - 1, b - 1) = v;
        h(b - 1, a - 1) = v;
    };
    couple(1, 4, h1);
    couple(2, 5, h1);
    couple(3, 6, h1);
    couple(1, 5, h2);
    couple(2, 6, h2);
    couple(3, 4, h2);
    return {"two-triangle", std::move(h), SiteSet::from_one_based({1, 2, 3}),
            "triangle with three satellites; the triangle sites carry the full "
            "latent symmetry"};
}

/// n-site ring with unit couplings and zero onsite energies.
inline NamedFixture make_ring(int n) {
    detail::require_input(n >= 3, "a ring needs at least 3 sites");
    Hamiltonian h(n, n);
    for (int i = 0; i < n; ++i) {
        h(i, (i + 1) % n) = 1;
        h((i + 1) % n, i) = 1;
    }
    const SiteSet sites = (n % 2 == 0) ? SiteSet::from_one_based({1, 1 + n / 2})
                                       : SiteSet::from_one_based({1, 2});
    return {"ring", std::move(h), sites, "plain n-site ring with unit couplings"};
}

/// n-site open chain with unit couplings and zero onsite energies.
inline NamedFixture make_path(int n) {
    detail::require_input(n >= 2, "a path needs at least 2 sites");
    Hamiltonian h(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        h(i, i + 1) = 1;
        h(i + 1, i) = 1;
    }
    return {"path", std::move(h), SiteSet::from_one_based({1, n}),
            "open chain; the endpoints form a reflection pair"};
}

/// Ring of n sites (coupling h3, onsite v1) with one satellite per ring
/// edge (onsite v2): satellite n+i couples with h1 to ring site i and
/// with h2 to ring site i+1.  For h1 != h2 the matrix keeps only the
/// n-fold rotation globally, while the ring sites keep the full 2n-fold
/// latent structure.
inline NamedFixture make_decorated_ring(int n, const Rational& h1, const Rational& h2,
                                        const Rational& h3, const Rational& v1,
                                        const Rational& v2) {
    detail::require_input(n >= 3, "a decorated ring needs at least 3 ring sites");
    detail::require_nonzero_couplings({h1, h2, h3});
    Hamiltonian h(2 * n, 2 * n);
    std::vector<int> ring;
    for (int i = 0; i < n; ++i) {
        ring.push_back(i);
        h(i, i) = v1;
        h(n + i, n + i) = v2;
        const int next = (i + 1) % n;
        h(i, next) = h3;
        h(next, i) = h3;
        h(n + i, i) = h1;
        h(i, n + i) = h1;
        h(n + i, next) = h2;
        h(next, n + i) = h2;
    }
    return {"decorated-ring", std::move(h), SiteSet(ring),
            "ring with one satellite per edge; ring sites carry the latent symmetry"};
}

/// Generic-looking matrix whose visible automorphism group is trivial but
/// whose first three sites still carry the full 6-element latent symmetry
/// of a triangle, forcing exactly degenerate eigenvalue pairs.
///
/// steps = 0 returns the bare symmetric triangle.  steps >= 2 first hides
/// the triangle behind a rotated satellite layer (3 extra sites), then
/// attaches steps-1 further sites: the first one uniformly to the
/// triangle, each later one to its predecessor.  All arithmetic is exact,
/// so the construction is verified before it is returned: trivial global
/// automorphisms, latent order 6, and at least one doubled eigenvalue.
inline NamedFixture make_asymmetric_latent_d3(std::uint64_t seed, int steps = 3) {
    detail::require_input(steps == 0 || steps >= 2, "steps must be 0 or at least 2");
    detail::require_input(steps <= 7, "steps above 7 make the matrix too large to verify");
    const SiteSet sites = SiteSet::from_one_based({1, 2, 3});
    const std::string name = "latent-d3";

    for (std::uint64_t attempt = 0; attempt < 32; ++attempt) {
        std::mt19937_64 rng(seed * 1000003ULL + attempt);
        auto draw = [&](bool nonzero) {
            while (true) {
                const int num = static_cast<int>(rng() % 9) - 4;
                if (nonzero && num == 0) continue;
                const int den = 1 + static_cast<int>(rng() % 3);
                return make_rational(num, den);
            }
        };

        const Rational t = draw(true);
        const Rational a = draw(false);
        Hamiltonian triangle(3, 3);
        for (int i = 0; i < 3; ++i) {
            triangle(i, i) = a;
            for (int j = i + 1; j < 3; ++j) {
                triangle(i, j) = t;
                triangle(j, i) = t;
            }
        }
        if (steps == 0)
            return {name, std::move(triangle), sites,
                    "bare symmetric triangle (steps = 0): latent and visible "
                    "symmetry coincide"};

        // satellite layer: couplings C0 Q with C0 the two-strength cyclic
        // pattern and Q a rational rotation; C C^T = C0 C0^T keeps the
        // reduced matrix fully symmetric while Q scrambles the visible one
        Rational h1 = draw(true);
        Rational h2 = draw(true);
        if (h1 == h2) h2 = (h1 == 1) ? Rational(2) : Rational(1);
        const Rational w = draw(false);
        Matrix<Rational> c0(3, 3);
        for (int i = 0; i < 3; ++i) {
            c0(i, i) = h1;
            c0(i, (i + 1) % 3) = h2;
        }
        Matrix<Rational> skew(3, 3);
        const Rational p = draw(true), q = draw(true), r = draw(true);
        skew(0, 1) = p;
        skew(1, 0) = -p;
        skew(0, 2) = q;
        skew(2, 0) = -q;
        skew(1, 2) = r;
        skew(2, 1) = -r;
        const Matrix<Rational> eye = Matrix<Rational>::identity(3);
        const Matrix<Rational> rot = (eye - skew) * field_inverse(eye + skew);
        const Matrix<Rational> cross = c0 * rot;

        Hamiltonian h(6, 6);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                h(i, j) = triangle(i, j);
                h(i, 3 + j) = cross(i, j);
                h(3 + j, i) = cross(i, j);
            }
        for (int i = 0; i < 3; ++i) h(3 + i, 3 + i) = w;

        for (int stage = 2; stage <= steps; ++stage) {
            const Rational g = draw(true);
            const Rational onsite = draw(false);
            const int n = h.rows();
            if (stage == 2) {
                // uniform pendant on the triangle itself
                Hamiltonian bigger(n + 1, n + 1);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) bigger(i, j) = h(i, j);
                for (int s : sites.indices()) {
                    bigger(n, s) = g;
                    bigger(s, n) = g;
                }
                bigger(n, n) = onsite;
                h = std::move(bigger);
            } else {
                ExtensionPlan plan;
                plan.terms.push_back({SiteSet({n - 1}), g});
                plan.onsite = onsite;
                h = extend_with_site(h, sites, plan);
            }
        }

        if (!global_automorphisms(h).is_trivial()) continue;
        const SymmetryGroup latent = latent_permutation_group(h, sites);
        if (latent.order() != 6 || latent.tag() != GroupTag::dihedral || latent.tag_n() != 3)
            continue;
        int doubled = 0;
        for (const auto& [factor, mult] : squarefree_decomposition(faddeev_leverrier(h).resolvent_den))
            if (mult >= 2) doubled += factor.degree();
        if (doubled < 1) continue;

        return {name, std::move(h), sites,
                "no visible symmetry, but sites 1-3 keep the full 6-element "
                "latent structure and the spectrum has exact degeneracies"};
    }
    throw precondition_error("could not realize the hidden-symmetry construction for seed " +
                             std::to_string(seed) + "; try another seed");
}

inline std::vector<std::string> fixture_names() {
    return {"two-triangle", "ring", "path", "decorated-ring", "latent-d3"};
}

namespace detail {

inline int fixture_int(const Rational& v, const std::string& what) {
    require_input(denominator(v) == 1, what + " must be an integer");
    const BigInt num = numerator(v);
    require_input(num >= -1000 && num <= 1000, what + " out of range");
    return static_cast<int>(num);
}

} // namespace detail

/// Builds a fixture by name.  params may be empty (defaults) or the full
/// parameter list of the fixture; seed only affects "latent-d3".
inline NamedFixture build_fixture(const std::string& name, std::vector<Rational> params,
                                  std::uint64_t seed = 1) {
    auto want = [&](size_t count, const std::vector<Rational>& defaults) {
        if (params.empty()) params = defaults;
        detail::require_input(params.size() == count,
                              name + " takes " + std::to_string(count) + " parameters, got " +
                                  std::to_string(params.size()));
    };
    if (name == "two-triangle") {
        want(5, {Rational(1), Rational(2), Rational(3), Rational(0), Rational(5)});
        return make_two_triangle(params[0], params[1], params[2], params[3], params[4]);
    }
    if (name == "ring") {
        want(1, {Rational(6)});
        return make_ring(detail::fixture_int(params[0], "ring size"));
    }
    if (name == "path") {
        want(1, {Rational(4)});
        return make_path(detail::fixture_int(params[0], "path length"));
    }
    if (name == "decorated-ring") {
        want(6, {Rational(4), Rational(1), Rational(2), Rational(3), Rational(0), Rational(5)});
        return make_decorated_ring(detail::fixture_int(params[0], "ring size"), params[1],
                                   params[2], params[3], params[4], params[5]);
    }
    if (name == "latent-d3") {
        want(1, {Rational(3)});
        return make_asymmetric_latent_d3(seed, detail::fixture_int(params[0], "steps"));
    }
    throw input_error("unknown fixture '" + name + "'; available: two-triangle, ring, path, "
                      "decorated-ring, latent-d3");
}

} // namespace latsym
