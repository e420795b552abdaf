#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <string>

#include "builders.hpp"
#include "latsym/degeneracy.hpp"

using namespace latsym;
using testutil::decorated_ring;
using testutil::random_symmetric;
using testutil::ring_graph;
using testutil::two_triangle;

namespace {

const Polynomial X = Polynomial::variable();

size_t count_for(const DegeneracyReport& rep, const std::string& label) {
    for (const auto& [irrep, count] : rep.decomposition)
        if (irrep.label == label) return count;
    FAIL("irrep label " + label + " not present");
    return 0;
}

} // namespace

TEST_CASE("cyclotomic polynomials, pinned") {
    CHECK(cyclotomic_polynomial(1) == X - 1);
    CHECK(cyclotomic_polynomial(2) == X + 1);
    CHECK(cyclotomic_polynomial(3) == X * X + X + 1);
    CHECK(cyclotomic_polynomial(4) == X * X + 1);
    CHECK(cyclotomic_polynomial(6) == X * X - X + 1);
    CHECK(cyclotomic_polynomial(8) == X.pow_u(4) + 1);
    CHECK(cyclotomic_polynomial(12) == X.pow_u(4) - X * X + 1);
}

TEST_CASE("cyclotomic field arithmetic") {
    const CyclotomicField f(5);
    // omega^5 = 1, and 1 + omega + ... + omega^4 = 0
    CHECK(f.omega_power(5) == Polynomial(1));
    Polynomial sum;
    for (int k = 0; k < 5; ++k) sum += f.omega_power(k);
    CHECK(f.reduce(sum).is_zero());
    // conjugation inverts the exponent
    CHECK(f.conjugate(f.omega_power(2)) == f.omega_power(3));
    // |omega^k|^2 = 1
    CHECK(f.to_rational(f.multiply(f.omega_power(3), f.conjugate(f.omega_power(3)))) == 1);
}

TEST_CASE("character tables are orthonormal") {
    auto check_table = [](const CharacterTable& t) {
        const CyclotomicField& f = t.field();
        const auto forms = t.element_forms();
        for (size_t i = 0; i < t.irreps().size(); ++i)
            for (size_t j = 0; j < t.irreps().size(); ++j) {
                Polynomial acc;
                for (const auto& [refl, p] : forms)
                    acc += f.multiply(t.value(i, refl, p), f.conjugate(t.value(j, refl, p)));
                const Rational ip = f.to_rational(f.reduce(acc));
                CHECK(ip == (i == j ? Rational(static_cast<long long>(t.group_order()))
                                    : Rational(0)));
            }
        // dimension sum rule
        long long dim_sq = 0;
        for (const auto& irrep : t.irreps()) dim_sq += irrep.dim * irrep.dim;
        CHECK(dim_sq == static_cast<long long>(t.group_order()));
    };
    check_table(CharacterTable::cyclic(3));
    check_table(CharacterTable::cyclic(5));
    check_table(CharacterTable::dihedral(2));
    check_table(CharacterTable::dihedral(3));
    check_table(CharacterTable::dihedral(4));
    check_table(CharacterTable::dihedral(5));
    check_table(CharacterTable::dihedral(6));
}

TEST_CASE("triangle action decomposes into trivial plus doublet") {
    const SymmetryGroup d3 = latent_permutation_group(two_triangle(1, 2, 3, 0, 5),
                                                      SiteSet({0, 1, 2}));
    const DegeneracyReport rep = degeneracy_bounds(d3);
    CHECK(count_for(rep, "A1") == 1);
    CHECK(count_for(rep, "A2") == 0);
    CHECK(count_for(rep, "E1") == 1);
    REQUIRE(rep.predictions.size() == 1);
    CHECK(rep.predictions[0] == DegeneracyPrediction{2, 1});
    CHECK(rep.dihedral_pair_bound == 1);
}

TEST_CASE("cyclic regular action uses every one-dimensional irrep once") {
    const auto c3 = SymmetryGroup::from_generators({Permutation::from_cycle(3, {0, 1, 2})}, 3);
    const DegeneracyReport rep = degeneracy_bounds(c3);
    REQUIRE(rep.decomposition.size() == 3);
    for (const auto& [irrep, count] : rep.decomposition) {
        CHECK(irrep.dim == 1);
        CHECK(count == 1);
    }
    // abelian: no forced degeneracy claim
    CHECK(rep.predictions.empty());
}

TEST_CASE("square ring action decomposition") {
    const SymmetryGroup d4 = global_automorphisms(ring_graph(4));
    const DegeneracyReport rep = degeneracy_bounds(d4);
    CHECK(count_for(rep, "A1") == 1);
    CHECK(count_for(rep, "A2") == 0);
    CHECK(count_for(rep, "B1") + count_for(rep, "B2") == 1);
    CHECK(count_for(rep, "E1") == 1);
    REQUIRE(rep.predictions.size() == 1);
    CHECK(rep.predictions[0] == DegeneracyPrediction{2, 1});
}

TEST_CASE("pentagon bound guarantees two pairs") {
    const SymmetryGroup d5 = global_automorphisms(ring_graph(5));
    const DegeneracyReport rep = degeneracy_bounds(d5);
    CHECK(rep.dihedral_pair_bound == 2);
    REQUIRE(rep.predictions.size() == 1);
    CHECK(rep.predictions[0] == DegeneracyPrediction{2, 2});
}

TEST_CASE("verification on the coupled triangle") {
    DegeneracyReport rep = analyze_degeneracy(two_triangle(1, 2, 3, 0, 5), SiteSet({0, 1, 2}));
    CHECK(rep.all_verified);
    CHECK(rep.diagonalizable);
    // exactly two distinct doubly degenerate eigenvalues
    int doubles = 0;
    for (const auto& [factor, mult] : rep.observed)
        if (mult == 2) doubles += factor.degree();
    CHECK(doubles == 2);
}

TEST_CASE("verification on the six-ring") {
    std::vector<int> all{0, 1, 2, 3, 4, 5};
    DegeneracyReport rep = analyze_degeneracy(ring_graph(6), SiteSet(all));
    CHECK(rep.group.order() == 12);
    CHECK(rep.group.tag_string() == "dihedral(6)");
    CHECK(rep.dihedral_pair_bound == 2);
    REQUIRE(rep.predictions.size() == 1);
    CHECK(rep.predictions[0] == DegeneracyPrediction{2, 2});
    CHECK(rep.all_verified);
    // spectrum 2cos(pi k/3): doubles at +1 and -1
    int doubles = 0;
    for (const auto& [factor, mult] : rep.observed)
        if (mult == 2) doubles += factor.degree();
    CHECK(doubles == 2);
}

TEST_CASE("decorated five-ring achieves the pentagon bound") {
    const Hamiltonian h = decorated_ring(5, 1, 2, 1, 0, 3);
    DegeneracyReport rep =
        analyze_degeneracy(h, SiteSet({0, 1, 2, 3, 4}));
    CHECK(rep.group.order() >= 10);
    CHECK(rep.all_verified);
    int doubles = 0;
    for (const auto& [factor, mult] : rep.observed)
        if (mult >= 2) doubles += factor.degree();
    CHECK(doubles >= 2);
}

TEST_CASE("non-abelian certificate on the full symmetric group") {
    Hamiltonian ones(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) ones(i, j) = 1;
    DegeneracyReport rep = analyze_degeneracy(ones, SiteSet({0, 1, 2, 3}));
    CHECK(rep.group.order() == 24);
    CHECK(rep.group.tag() == GroupTag::other_nonabelian);
    CHECK(rep.used_nonabelian_certificate);
    CHECK(rep.constituent_count == 2);
    CHECK(rep.orbit_count == 1);
    REQUIRE(rep.predictions.size() == 1);
    CHECK(rep.predictions[0] == DegeneracyPrediction{2, 1});
    CHECK(rep.all_verified);  // triple zero eigenvalue
    CHECK(rep.diagonalizable);
}

TEST_CASE("trivial group verifies vacuously") {
    std::mt19937 rng(99);
    const Hamiltonian h = random_symmetric(rng, 5);
    DegeneracyReport rep = analyze_degeneracy(h, SiteSet({0, 1, 2}));
    if (rep.group.is_trivial()) {
        CHECK(rep.predictions.empty());
        CHECK(rep.all_verified);
    }
}

TEST_CASE("non-diagonalizable inputs are flagged") {
    Hamiltonian nilpotent(2, 2);
    nilpotent(0, 1) = 1;
    DegeneracyReport rep = degeneracy_bounds(latent_permutation_group(nilpotent, SiteSet({0, 1})));
    verify_degeneracies(nilpotent, rep);
    CHECK(!rep.diagonalizable);
    REQUIRE(rep.observed.size() == 1);
    CHECK(rep.observed[0].first == X);
    CHECK(rep.observed[0].second == 2);
}

TEST_CASE("orbit computation") {
    const auto d3 = global_automorphisms(two_triangle(1, 1, 3, 0, 5));
    const auto orbits = group_orbits(d3);
    REQUIRE(orbits.size() == 2);
    CHECK(orbits[0] == std::vector<int>{0, 1, 2});
    CHECK(orbits[1] == std::vector<int>{3, 4, 5});
}

TEST_CASE("claimed degenerate dimensions never exceed the action size") {
    std::mt19937 rng(123);
    for (int t = 0; t < 10; ++t) {
        const Hamiltonian h = random_symmetric(rng, 5);
        const DegeneracyReport rep = degeneracy_bounds(latent_permutation_group(h, SiteSet({0, 1, 2, 3})));
        int claimed = 0;
        for (const auto& p : rep.predictions) claimed += p.degeneracy * p.count;
        CHECK(claimed <= 4);
    }
}
