#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <random>
#include <string>

#include "latsym/graph_doc.hpp"

#include "builders.hpp"

using namespace latsym;

TEST_CASE("document parsing handles comments, fractions, and labels") {
    const std::string text = R"(# a small example
size 3            # three sites

hermitian true
onsite 2 -5/3
1 2 1/2
2 3 -2            # mirrored automatically
label 1 corner
label 3 edge
)";
    const auto doc = GraphDocument::parse_text(text);
    CHECK(doc.size == 3);
    CHECK(doc.hermitian);
    CHECK(doc.matrix(1, 1) == make_rational(-5, 3));
    CHECK(doc.matrix(0, 1) == make_rational(1, 2));
    CHECK(doc.matrix(1, 0) == make_rational(1, 2));
    CHECK(doc.matrix(1, 2) == -2);
    CHECK(doc.matrix(2, 1) == -2);
    CHECK(doc.matrix(0, 0) == 0);
    CHECK(doc.matrix(0, 2) == 0);
    CHECK(doc.labels[0] == "corner");
    CHECK(doc.labels[1] == "");
    CHECK(doc.labels[2] == "edge");
}

TEST_CASE("a bare size line is a valid empty system") {
    const auto doc = GraphDocument::parse_text("size 4\n");
    CHECK(doc.size == 4);
    CHECK(doc.hermitian);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(doc.matrix(i, j) == 0);
}

TEST_CASE("symmetric documents round-trip losslessly") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const auto m = testutil::random_symmetric(rng, n);
        auto doc = GraphDocument::from_matrix(m);
        if (trial % 3 == 0) doc.labels[0] = "site-a";

        const auto back = GraphDocument::parse_text(doc.serialize());
        CHECK(back == doc);
        CHECK(back.digest() == doc.digest());
    }
}

TEST_CASE("directed documents keep asymmetric entries") {
    Hamiltonian m(3, 3);
    m(0, 1) = 2;
    m(1, 0) = -3;
    m(2, 2) = make_rational(7, 2);
    const auto doc = GraphDocument::from_matrix(m, false);
    const auto back = GraphDocument::parse_text(doc.serialize());
    CHECK_FALSE(back.hermitian);
    CHECK(back.matrix == m);
}

TEST_CASE("digests are stable and separate different systems") {
    const auto a = GraphDocument::from_matrix(testutil::ring_graph(5));
    const auto b = GraphDocument::from_matrix(testutil::ring_graph(5));
    CHECK(a.digest() == b.digest());
    CHECK(a.digest().size() == 16);

    auto c = GraphDocument::from_matrix(testutil::ring_graph(5));
    c.matrix(0, 0) = 1;
    c.matrix(1, 1) = 0;  // keep it a valid symmetric matrix
    CHECK(c.digest() != a.digest());

    const auto d = GraphDocument::from_matrix(testutil::path_graph(5));
    CHECK(d.digest() != a.digest());
}

TEST_CASE("documents survive a file round-trip") {
    const auto doc = GraphDocument::from_matrix(
        testutil::two_triangle(Rational(1), Rational(2), Rational(3), Rational(0), Rational(5)));
    const std::string path = "test_graph_doc_roundtrip.tmp";
    doc.save(path);
    const auto back = GraphDocument::load(path);
    std::remove(path.c_str());
    CHECK(back == doc);
}

TEST_CASE("parse rejects malformed documents with line context") {
    auto reject = [](const std::string& text, const std::string& fragment) {
        try {
            GraphDocument::parse_text(text);
            FAIL("expected rejection of: " << text);
        } catch (const input_error& e) {
            CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring(fragment));
        }
    };

    reject("1 2 3\n", "size");
    reject("size 2\nsize 2\n", "twice");
    reject("size 0\n", "positive");
    reject("size x\n", "bad size");
    reject("size 2\n1 3 5\n", "out of range");
    reject("size 2\n0 1 5\n", "out of range");
    reject("size 2\nonsite 5 1\n", "out of range");
    reject("size 2\n1 1 5\n", "onsite");
    reject("size 2\n1 2 1\n2 1 1\n", "duplicate");
    reject("size 2\n1 2 1\n1 2 1\n", "duplicate");
    reject("size 2\nonsite 1 2\nonsite 1 2\n", "duplicate");
    reject("size 2\n1 2 2+3i\n", "bad value");
    reject("size 2\n1 2 1/0\n", "bad value");
    reject("size 2\n1 2\n", "expected");
    reject("size 2\n1 2 1\nhermitian false\n", "before any entry");
    reject("size 2\nhermitian yes\n", "true|false");
    reject("size 2\nhermitian true\nhermitian true\n", "twice");
    reject("size 2\nlabel 1 a\nlabel 1 b\n", "duplicate");
    reject("size 2\nlabel 1\n", "usage");
    reject("", "no size");
}

TEST_CASE("asymmetric matrices cannot be declared hermitian") {
    Hamiltonian m(2, 2);
    m(0, 1) = 1;
    CHECK_THROWS_AS(GraphDocument::from_matrix(m, true), input_error);
    CHECK_NOTHROW(GraphDocument::from_matrix(m, false));
}

TEST_CASE("directed parsing distinguishes the two directions") {
    const auto doc = GraphDocument::parse_text("size 2\nhermitian false\n1 2 3\n2 1 -4\n");
    CHECK(doc.matrix(0, 1) == 3);
    CHECK(doc.matrix(1, 0) == -4);
}

TEST_CASE("serialization omits zero entries") {
    Hamiltonian m(3, 3);
    m(0, 1) = 1;
    m(1, 0) = 1;
    const auto text = GraphDocument::from_matrix(m).serialize();
    CHECK(text == "size 3\nhermitian true\n1 2 1\n");
}
