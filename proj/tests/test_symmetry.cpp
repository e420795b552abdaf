#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "builders.hpp"
#include "latsym/symmetry.hpp"

using namespace latsym;
using testutil::decorated_ring;
using testutil::path_graph;
using testutil::random_rational;
using testutil::random_sites;
using testutil::random_symmetric;
using testutil::ring_graph;
using testutil::two_triangle;

namespace {

SiteSet sites1(std::vector<int> one_based) { return SiteSet::from_one_based(one_based); }

Matrix<Rational> cyclic_shift3() {
    return Permutation(std::vector<int>{1, 2, 0}).matrix<Rational>();
}

Matrix<Rational> transposition3() {
    return Permutation(std::vector<int>{1, 0, 2}).matrix<Rational>();
}

} // namespace

TEST_CASE("permutation basics") {
    const Permutation p({1, 2, 0, 3});
    CHECK(p.order() == 3);
    CHECK(p.fixed_points() == 1);
    CHECK(p.to_string() == "(1 2 3)");
    CHECK((p * p * p).is_identity());
    CHECK(p.inverse() * p == Permutation::identity(4));
    CHECK(Permutation::from_cycle(4, {0, 2}).to_string() == "(1 3)");
    CHECK(Permutation::identity(3).to_string() == "id");
    CHECK_THROWS_AS(Permutation({0, 0, 1}), input_error);

    // matrix convention: P sends basis vector i to image(i)
    const auto m = p.matrix<Rational>();
    CHECK(m(1, 0) == 1);
    CHECK(m(2, 1) == 1);
    CHECK(m(0, 2) == 1);
    CHECK(m(3, 3) == 1);
}

TEST_CASE("permutation preserves means conjugation-invariance") {
    std::mt19937 rng(411);
    const Hamiltonian h = random_symmetric(rng, 5);
    const Permutation p = Permutation::from_cycle(5, {0, 1, 2, 3, 4});
    const auto pm = p.matrix<Rational>();
    CHECK(p.preserves(h) == (pm * h == h * pm));
}

TEST_CASE("walk profile on the 3-site path") {
    const Hamiltonian h = path_graph(3);
    const WalkProfile w = walk_profile(h, sites1({1, 3}));
    REQUIRE(w.levels() == 3);
    CHECK(w.blocks[0] == Matrix<Rational>::identity(2));
    CHECK(w.blocks[1] == Matrix<Rational>(2, 2));  // end sites are not adjacent
    Matrix<Rational> sq(2, 2);
    sq(0, 0) = sq(0, 1) = sq(1, 0) = sq(1, 1) = 1;
    CHECK(w.blocks[2] == sq);
}

TEST_CASE("walk profile of the coupled-triangle block") {
    const Hamiltonian h = two_triangle(1, 2, 3, Rational(1, 2), 5);
    const WalkProfile w = walk_profile(h, sites1({1, 2, 3}));
    REQUIRE(w.levels() == 6);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(w.blocks[1](i, j) == (i == j ? Rational(1, 2) : Rational(3)));
}

TEST_CASE("power commutation on the triangle block") {
    const Hamiltonian h = two_triangle(1, 2, 3, 0, 5);
    const SiteSet s = sites1({1, 2, 3});
    CHECK(local_power_commute(h, s, cyclic_shift3()));
    CHECK(local_power_commute(h, s, transposition3()));

    // identity always commutes
    CHECK(local_power_commute(h, s, Matrix<Rational>::identity(3)));
}

TEST_CASE("random negative control for power commutation") {
    std::mt19937 rng(177);
    int failures = 0;
    for (int t = 0; t < 20; ++t) {
        const Hamiltonian h = random_symmetric(rng, 5);
        const SiteSet s({0, 1, 2});
        if (local_power_commute(h, s, transposition3())) ++failures;
    }
    CHECK(failures == 0);
}

TEST_CASE("symbolic and power commutation agree") {
    std::mt19937 rng(2029);
    for (int t = 0; t < 60; ++t) {
        const int n = 3 + static_cast<int>(rng() % 4);  // up to 6 sites
        const Hamiltonian h = random_symmetric(rng, n);
        const SiteSet s = random_sites(rng, n);
        const ReducedMatrix r = isospectral_reduce(h, s);

        Matrix<Rational> m(s.size(), s.size());
        if (t % 2 == 0) {
            // random permutation candidate
            std::vector<int> img(static_cast<size_t>(s.size()));
            std::iota(img.begin(), img.end(), 0);
            std::shuffle(img.begin(), img.end(), rng);
            m = Permutation(img).matrix<Rational>();
        } else {
            // arbitrary small integer matrix
            for (int i = 0; i < s.size(); ++i)
                for (int j = 0; j < s.size(); ++j)
                    m(i, j) = Rational(static_cast<int>(rng() % 5) - 2);
        }
        CHECK(symbolic_commute(r, m) == local_power_commute(h, s, m));
    }
}

TEST_CASE("latent permutation group of the coupled triangle") {
    const Hamiltonian h = two_triangle(1, 2, 3, 0, 5);
    const SymmetryGroup g = latent_permutation_group(h, sites1({1, 2, 3}));
    CHECK(g.order() == 6);
    CHECK(g.tag() == GroupTag::dihedral);
    CHECK(g.tag_n() == 3);
    CHECK(g.tag_string() == "dihedral(3)");

    // every element certifies against the reduced matrix
    const ReducedMatrix r = isospectral_reduce(h, sites1({1, 2, 3}));
    for (const auto& p : g.elements()) CHECK(symbolic_commute(r, p.matrix<Rational>()));
}

TEST_CASE("latent group of the path end sites is the swap") {
    const SymmetryGroup g = latent_permutation_group(path_graph(3), sites1({1, 3}));
    CHECK(g.order() == 2);
    CHECK(g.tag_string() == "cyclic(2)");
}

TEST_CASE("generic matrices have a trivial latent group") {
    std::mt19937 rng(555);
    Hamiltonian h(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j) {
            const Rational v = Rational(1, 1 + i + 7 * j);  // all distinct couplings
            h(i, j) = v;
            h(j, i) = v;
        }
    const SymmetryGroup g = latent_permutation_group(h, SiteSet({0, 1, 2}));
    CHECK(g.is_trivial());
    CHECK(g.tag_string() == "cyclic(1)");
}

TEST_CASE("latent search refuses oversized site sets") {
    Hamiltonian h(11, 11);
    std::vector<int> all;
    for (int i = 0; i < 11; ++i) all.push_back(i);
    CHECK_THROWS_AS(latent_permutation_group(h, SiteSet(all)), precondition_error);
}

TEST_CASE("global automorphisms of the two-triangle family") {
    const SymmetryGroup chiral = global_automorphisms(two_triangle(1, 2, 3, 0, 5));
    CHECK(chiral.order() == 3);
    CHECK(chiral.tag_string() == "cyclic(3)");

    const SymmetryGroup mirrored = global_automorphisms(two_triangle(1, 1, 3, 0, 5));
    CHECK(mirrored.order() == 6);
    CHECK(mirrored.tag_string() == "dihedral(3)");

    for (const auto& p : mirrored.elements()) CHECK(p.preserves(two_triangle(1, 1, 3, 0, 5)));
}

TEST_CASE("ring automorphisms are dihedral") {
    CHECK(global_automorphisms(ring_graph(4)).tag_string() == "dihedral(4)");
    CHECK(global_automorphisms(ring_graph(6)).order() == 12);
    CHECK(global_automorphisms(path_graph(4)).order() == 2);
}

TEST_CASE("cyclic orbits of the two-triangle fixture") {
    const auto orbits = cyclic_orbit_sets(two_triangle(1, 2, 3, 0, 5));
    REQUIRE(orbits.size() == 2);
    CHECK(orbits[0].same_sites(SiteSet({0, 1, 2})));
    CHECK(orbits[1].same_sites(SiteSet({3, 4, 5})));
}

TEST_CASE("cyclic orbits of rings and asymmetric graphs") {
    const auto ring_orbits = cyclic_orbit_sets(ring_graph(4));
    bool has_full = false;
    for (const auto& v : ring_orbits)
        if (v.same_sites(SiteSet({0, 1, 2, 3}))) has_full = true;
    CHECK(has_full);

    Hamiltonian h(4, 4);
    for (int i = 0; i < 4; ++i) h(i, i) = i;  // pairwise distinct on-site values
    CHECK(cyclic_orbit_sets(h).empty());
}

TEST_CASE("circulant form of the triangle reduction") {
    const Hamiltonian h = two_triangle(1, 2, 3, 0, 5);
    const ReducedMatrix r = isospectral_reduce(h, sites1({1, 2, 3}));
    const CirculantForm f = circulant_canonicalize(r);
    CHECK(f.is_symmetric_circulant);
    CHECK(f.reordering().is_identity());
}

TEST_CASE("circulant form after site scrambling") {
    // Scramble the reduction of a decorated 4-ring over its ring orbit by
    // listing the orbit out of cyclic order; canonicalization must find a
    // reordering that restores the symmetric circulant.
    const Hamiltonian h = decorated_ring(4, 1, 2, 1, 0, 3);
    const ReducedMatrix r = isospectral_reduce(h, sites1({1, 3, 2, 4}));
    CHECK(!detail::entries_circulant(r.entries));
    const CirculantForm f = circulant_canonicalize(r);
    CHECK(f.is_symmetric_circulant);
    CHECK(detail::entries_circulant(f.canonical));
    CHECK(detail::entries_symmetric(f.canonical));
}

TEST_CASE("non-circulant reductions are reported as such") {
    // 1-2-3 chain over {1,2}: diagonal entries differ, so no reordering
    // can make it circulant.
    const ReducedMatrix r = isospectral_reduce(path_graph(3), sites1({1, 2}));
    const CirculantForm f = circulant_canonicalize(r);
    CHECK(!f.is_symmetric_circulant);
}

TEST_CASE("walk singlet checks") {
    CHECK(walk_singlet_check(two_triangle(1, 2, 3, 0, 5), 0, 2, 1));
    CHECK(walk_singlet_check(path_graph(3), 0, 2, 1));
    CHECK(!walk_singlet_check(path_graph(4), 0, 3, 1));
    CHECK_THROWS_AS(walk_singlet_check(path_graph(4), 0, 1, 2), precondition_error);
}

TEST_CASE("cospectral partition examples") {
    const auto p3 = cospectral_partition(path_graph(3));
    REQUIRE(p3.classes.size() == 2);
    CHECK(p3.classes[0] == std::vector<int>{0, 2});
    CHECK(p3.classes[1] == std::vector<int>{1});

    const auto p4 = cospectral_partition(path_graph(4));
    REQUIRE(p4.classes.size() == 2);
    CHECK(p4.classes[0] == std::vector<int>{0, 3});
    CHECK(p4.classes[1] == std::vector<int>{1, 2});

    const auto tt = cospectral_partition(two_triangle(1, 2, 3, 0, 5));
    REQUIRE(tt.classes.size() == 2);
    CHECK(tt.classes[0] == std::vector<int>{0, 1, 2});
    CHECK(tt.classes[1] == std::vector<int>{3, 4, 5});
}

TEST_CASE("cospectral partition agrees with brute force") {
    std::mt19937 rng(86);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const Hamiltonian h = random_symmetric(rng, n);
        const auto part = cospectral_partition(h);
        const auto powers = full_powers(h);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                const bool same_class = part.class_of(u) == part.class_of(v);
                CHECK(same_class == cospectral_sites(powers, u, v));
            }
    }
}

TEST_CASE("walk block decomposition identity") {
    std::mt19937 rng(3090);
    for (int t = 0; t < 25; ++t) {
        const int n = 3 + static_cast<int>(rng() % 4);
        const Hamiltonian h = random_symmetric(rng, n);
        const SiteSet s = random_sites(rng, n);
        for (int k = 1; k <= 6; ++k) CHECK(walk_decomposition_identity_holds(h, s, k));
    }
}

TEST_CASE("group construction and classification") {
    const auto c3 = SymmetryGroup::from_generators({Permutation::from_cycle(3, {0, 1, 2})}, 3);
    CHECK(c3.order() == 3);
    CHECK(c3.tag_string() == "cyclic(3)");

    const auto s4 = SymmetryGroup::from_generators(
        {Permutation::from_cycle(4, {0, 1}), Permutation::from_cycle(4, {0, 1, 2, 3})}, 4);
    CHECK(s4.order() == 24);
    CHECK(s4.tag() == GroupTag::other_nonabelian);

    const auto klein = SymmetryGroup::from_generators(
        {Permutation({1, 0, 3, 2}), Permutation({2, 3, 0, 1})}, 4);
    CHECK(klein.order() == 4);
    CHECK(klein.tag_string() == "dihedral(2)");
    CHECK(klein.is_abelian());

    const auto d3 = global_automorphisms(two_triangle(1, 1, 3, 0, 5));
    const auto classes = d3.conjugacy_classes();
    std::vector<size_t> sizes;
    for (const auto& c : classes) sizes.push_back(c.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<size_t>{1, 2, 3});
}

TEST_CASE("group axioms are enforced") {
    // {id, (1 2 3)} is not closed
    CHECK_THROWS_AS(SymmetryGroup::from_elements(
                        {Permutation::identity(3), Permutation::from_cycle(3, {0, 1, 2})}),
                    input_error);
}

TEST_CASE("subgroup containment") {
    const auto d3 = global_automorphisms(two_triangle(1, 1, 3, 0, 5));
    const auto c3 = global_automorphisms(two_triangle(1, 2, 3, 0, 5));
    CHECK(d3.contains_group(c3));
    CHECK(!c3.contains_group(d3));
}

TEST_CASE("generators actually generate") {
    const auto d4 = global_automorphisms(ring_graph(4));
    const auto regen = SymmetryGroup::from_generators(d4.generators(), d4.degree());
    CHECK(regen.order() == d4.order());
}
