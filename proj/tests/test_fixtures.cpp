#include <catch2/catch_amalgamated.hpp>

#include "latsym/degeneracy.hpp"
#include "latsym/fixtures.hpp"
#include "latsym/walks.hpp"

#include "builders.hpp"

using namespace latsym;

TEST_CASE("two-triangle fixture matches the reference construction") {
    const Rational h1(1), h2(2), h3(3), v1(0), v2(5);
    const auto fix = make_two_triangle(h1, h2, h3, v1, v2);
    CHECK(fix.name == "two-triangle");
    CHECK(fix.matrix == testutil::two_triangle(h1, h2, h3, v1, v2));
    CHECK(fix.sites == SiteSet::from_one_based({1, 2, 3}));

    CHECK_THROWS_AS(make_two_triangle(Rational(0), h2, h3, v1, v2), input_error);
    CHECK_THROWS_AS(make_two_triangle(h1, Rational(0), h3, v1, v2), input_error);
    CHECK_THROWS_AS(make_two_triangle(h1, h2, Rational(0), v1, v2), input_error);
}

TEST_CASE("ring and path fixtures match the reference constructions") {
    for (int n = 3; n <= 6; ++n) CHECK(make_ring(n).matrix == testutil::ring_graph(n));
    for (int n = 2; n <= 6; ++n) CHECK(make_path(n).matrix == testutil::path_graph(n));
    CHECK_THROWS_AS(make_ring(2), input_error);
    CHECK_THROWS_AS(make_path(1), input_error);

    // the suggested site pairs are cospectral by construction
    const auto ring6 = make_ring(6);
    CHECK(ring6.sites == SiteSet::from_one_based({1, 4}));
    CHECK(cospectral_sites(ring6.matrix, ring6.sites[0], ring6.sites[1]));
    const auto path4 = make_path(4);
    CHECK(cospectral_sites(path4.matrix, path4.sites[0], path4.sites[1]));
}

TEST_CASE("decorated ring fixture matches the reference construction") {
    const Rational h1(1), h2(2), h3(3), v1(0), v2(5);
    for (int n = 3; n <= 5; ++n) {
        const auto fix = make_decorated_ring(n, h1, h2, h3, v1, v2);
        CHECK(fix.matrix == testutil::decorated_ring(n, h1, h2, h3, v1, v2));
        CHECK(fix.sites.size() == n);
    }
    CHECK_THROWS_AS(make_decorated_ring(2, h1, h2, h3, v1, v2), input_error);
    CHECK_THROWS_AS(make_decorated_ring(3, Rational(0), h2, h3, v1, v2), input_error);
}

TEST_CASE("three-ring decoration is the mirrored six-site cluster") {
    const Rational h1(1), h2(2), h3(3), v1(0), v2(5);
    const auto ring = make_decorated_ring(3, h1, h2, h3, v1, v2).matrix;
    const auto tri = make_two_triangle(h1, h2, h3, v1, v2).matrix;

    // the two constructions wind the satellite pattern with opposite
    // chirality; swapping sites 2,3 and 5,6 maps one onto the other
    const int relabel[6] = {0, 2, 1, 3, 5, 4};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(tri(relabel[i], relabel[j]) == ring(i, j));
}

TEST_CASE("hidden-symmetry fixture is deterministic per seed") {
    const auto a = make_asymmetric_latent_d3(5, 3);
    const auto b = make_asymmetric_latent_d3(5, 3);
    CHECK(a.matrix == b.matrix);

    const auto c = make_asymmetric_latent_d3(6, 3);
    CHECK_FALSE(a.matrix == c.matrix);
}

TEST_CASE("hidden-symmetry fixture validates its stage count") {
    CHECK_THROWS_AS(make_asymmetric_latent_d3(1, 1), input_error);
    CHECK_THROWS_AS(make_asymmetric_latent_d3(1, -1), input_error);
    CHECK_THROWS_AS(make_asymmetric_latent_d3(1, 8), input_error);

    CHECK(make_asymmetric_latent_d3(1, 0).matrix.rows() == 3);
    CHECK(make_asymmetric_latent_d3(1, 2).matrix.rows() == 7);
    CHECK(make_asymmetric_latent_d3(1, 3).matrix.rows() == 8);
    CHECK(make_asymmetric_latent_d3(1, 4).matrix.rows() == 9);
}

TEST_CASE("bare triangle stage keeps its visible symmetry") {
    const auto fix = make_asymmetric_latent_d3(7, 0);
    CHECK(global_automorphisms(fix.matrix).order() == 6);
}

TEST_CASE("hidden-symmetry fixture has no visible symmetry but exact degeneracy") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const auto fix = make_asymmetric_latent_d3(seed, 3);
        REQUIRE(fix.matrix.rows() == 8);

        CHECK(global_automorphisms(fix.matrix).is_trivial());

        const auto latent = latent_permutation_group(fix.matrix, fix.sites);
        CHECK(latent.order() == 6);
        CHECK(latent.tag_string() == "dihedral(3)");

        int doubled = 0;
        const auto decomp =
            squarefree_decomposition(faddeev_leverrier(fix.matrix).resolvent_den);
        for (const auto& [factor, mult] : decomp)
            if (mult >= 2) doubled += factor.degree();
        CHECK(doubled >= 1);

        // the full analysis pipeline reaches the same conclusion
        const auto report = analyze_degeneracy(fix.matrix, fix.sites);
        CHECK(report.all_verified);
        REQUIRE_FALSE(report.predictions.empty());
        CHECK(report.predictions[0].degeneracy == 2);
    }
}

TEST_CASE("fixture registry builds by name with defaults") {
    CHECK(build_fixture("two-triangle", {}).matrix ==
          testutil::two_triangle(Rational(1), Rational(2), Rational(3), Rational(0), Rational(5)));
    CHECK(build_fixture("ring", {}).matrix == testutil::ring_graph(6));
    CHECK(build_fixture("path", {}).matrix == testutil::path_graph(4));
    CHECK(build_fixture("decorated-ring", {}).matrix ==
          testutil::decorated_ring(4, Rational(1), Rational(2), Rational(3), Rational(0),
                                   Rational(5)));
    CHECK(build_fixture("latent-d3", {}, 5).matrix == make_asymmetric_latent_d3(5, 3).matrix);

    CHECK(build_fixture("ring", {Rational(8)}).matrix == testutil::ring_graph(8));

    CHECK(fixture_names().size() == 5);
}

TEST_CASE("fixture registry rejects bad requests") {
    CHECK_THROWS_AS(build_fixture("moebius", {}), input_error);
    CHECK_THROWS_AS(build_fixture("ring", {Rational(3), Rational(4)}), input_error);
    CHECK_THROWS_AS(build_fixture("ring", {make_rational(7, 2)}), input_error);
    CHECK_THROWS_AS(build_fixture("two-triangle", {Rational(1)}), input_error);
}
