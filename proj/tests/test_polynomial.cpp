#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "latsym/polynomial.hpp"
#include "latsym/rational.hpp"
#include "latsym/rational_function.hpp"

using namespace latsym;

namespace {

// x - c
Polynomial lin(int c) { return Polynomial{Rational(-c), Rational(1)}; }

Polynomial random_poly(std::mt19937& rng, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg), num(-4, 4), den(1, 3);
    std::vector<Rational> c(static_cast<size_t>(deg(rng)) + 1);
    for (auto& v : c) v = Rational(num(rng), den(rng));
    return Polynomial(std::move(c));
}

} // namespace

TEST_CASE("rational parsing and formatting") {
    REQUIRE(parse_rational("22/7") == Rational(22, 7));
    REQUIRE(parse_rational("-5/10") == Rational(-1, 2));
    REQUIRE(parse_rational("42") == Rational(42));
    REQUIRE(format_rational(Rational(-1, 2)) == "-1/2");
    REQUIRE(format_rational(Rational(3)) == "3");
    REQUIRE(make_rational(3, -6) == Rational(-1, 2));
    REQUIRE_THROWS_AS(parse_rational("1/0"), input_error);
    REQUIRE_THROWS_AS(parse_rational("a/b"), input_error);
    REQUIRE_THROWS_AS(parse_rational(""), input_error);
}

TEST_CASE("polynomial basics") {
    const Polynomial p{Rational(5), Rational(-2), Rational(0), Rational(1)};  // x^3 - 2x + 5
    REQUIRE(p.degree() == 3);
    REQUIRE(p.evaluate(2) == Rational(9));
    REQUIRE(p.derivative() == Polynomial{Rational(-2), Rational(0), Rational(3)});
    REQUIRE(p.to_string() == "x^3 - 2*x + 5");
    REQUIRE(Polynomial{}.is_zero());
    REQUIRE(Polynomial{}.degree() == -1);
    REQUIRE((p - p).is_zero());
}

TEST_CASE("polynomial division") {
    // Hand-worked: x^3 - 2x + 5 = (x - 3)(x^2 + 3x + 7) + 26.
    const Polynomial p{Rational(5), Rational(-2), Rational(0), Rational(1)};
    const auto [q, r] = p.divmod(lin(3));
    REQUIRE(q == Polynomial{Rational(7), Rational(3), Rational(1)});
    REQUIRE(r == Polynomial(Rational(26)));
    REQUIRE(q * lin(3) + r == p);
    REQUIRE((p * lin(2)).exact_div(lin(2)) == p);
}

TEST_CASE("polynomial gcd") {
    // gcd((x-1)(x+2)^2, (x-1)^2 (x+2)) = (x-1)(x+2) = x^2 + x - 2.
    const Polynomial a = lin(1) * lin(-2) * lin(-2);
    const Polynomial b = lin(1) * lin(1) * lin(-2);
    REQUIRE(poly_gcd(a, b) == Polynomial{Rational(-2), Rational(1), Rational(1)});
    REQUIRE(poly_gcd(a, Polynomial{}) == a.monic());
    REQUIRE(poly_gcd(Polynomial{}, Polynomial{}).is_zero());

    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Polynomial f = random_poly(rng, 4), g = random_poly(rng, 4);
        if (f.is_zero() || g.is_zero()) continue;
        const Polynomial d = poly_gcd(f, g);
        // The gcd divides both arguments exactly.
        REQUIRE(f.divmod(d).second.is_zero());
        REQUIRE(g.divmod(d).second.is_zero());
    }
}

TEST_CASE("squarefree decomposition") {
    SECTION("pinned example (lambda-1)^2 (lambda+2)") {
        const Polynomial p = lin(1) * lin(1) * lin(-2);
        const auto parts = squarefree_decomposition(p);
        REQUIRE(parts.size() == 2);
        REQUIRE(parts[0].first == lin(-2));
        REQUIRE(parts[0].second == 1);
        REQUIRE(parts[1].first == lin(1));
        REQUIRE(parts[1].second == 2);
    }
    SECTION("three distinct multiplicities") {
        const Polynomial p = lin(1) * lin(-1).pow_u(2) * lin(2).pow_u(3) * Rational(-6);
        const auto parts = squarefree_decomposition(p);
        REQUIRE(parts.size() == 3);
        REQUIRE(parts[0] == std::pair(lin(1), 1));
        REQUIRE(parts[1] == std::pair(lin(-1), 2));
        REQUIRE(parts[2] == std::pair(lin(2), 3));
        REQUIRE(squarefree_part(p) == (lin(1) * lin(-1) * lin(2)).monic());
    }
    SECTION("certificate on random products") {
        // Reassembly, pairwise coprimality and squarefreeness of the parts
        // certify the output: the decomposition with these properties is
        // unique, so passing the certificate means being the decomposition.
        std::mt19937 rng(11);
        std::uniform_int_distribution<int> root(-3, 3), mult(1, 3);
        for (int trial = 0; trial < 30; ++trial) {
            const int lead = root(rng);
            Polynomial p(Rational(lead == 0 ? 1 : lead));
            for (int i = 0; i < 3; ++i) p = p * lin(root(rng)).pow_u(static_cast<unsigned>(mult(rng)));
            const auto parts = squarefree_decomposition(p);
            Polynomial rebuilt(p.leading());
            for (const auto& [f, m] : parts) {
                rebuilt = rebuilt * f.pow_u(static_cast<unsigned>(m));
                REQUIRE(poly_gcd(f, f.derivative()).degree() == 0);  // squarefree
            }
            REQUIRE(rebuilt == p);
            for (size_t i = 0; i < parts.size(); ++i)
                for (size_t j = i + 1; j < parts.size(); ++j)
                    REQUIRE(poly_gcd(parts[i].first, parts[j].first).degree() == 0);
        }
    }
}

TEST_CASE("binomial coefficients") {
    REQUIRE(binomial(5, 2) == 10);
    REQUIRE(binomial(0, 0) == 1);
    REQUIRE(binomial(7, 7) == 1);
    REQUIRE(binomial(4, 5) == 0);
    REQUIRE(binomial(60, 30) == BigInt("118264581564861424"));
}

TEST_CASE("rational function canonical form") {
    const Polynomial x = Polynomial::variable();
    SECTION("gcd reduction and monic denominator") {
        // (2x^2 - 2) / (4x - 4) = (x + 1)/2.
        const RationalFunction f(Rational(2) * (x * x - Polynomial(1)),
                                 Rational(4) * (x - Polynomial(1)));
        REQUIRE(f.den() == Polynomial(1));
        REQUIRE(f.num() == Polynomial{Rational(1, 2), Rational(1, 2)});
    }
    SECTION("arithmetic") {
        const RationalFunction inv_x(Polynomial(1), x);  // 1/x
        const RationalFunction sum = inv_x + RationalFunction(x);
        REQUIRE(sum.num() == x * x + Polynomial(1));
        REQUIRE(sum.den() == x);
        REQUIRE(sum - inv_x == RationalFunction(x));
        REQUIRE(inv_x * RationalFunction(x) == RationalFunction(1));
        REQUIRE(RationalFunction(1) / inv_x == RationalFunction(x));
        REQUIRE((inv_x - inv_x).is_zero());
    }
    SECTION("evaluation and poles") {
        const RationalFunction f(Polynomial{Rational(-13), Rational(3)},
                                 Polynomial{Rational(-5), Rational(1)});  // (3x-13)/(x-5)
        REQUIRE(f.evaluate(6) == Rational(5));
        REQUIRE(f.is_pole(5));
        REQUIRE_THROWS_AS(f.evaluate(5), precondition_error);
        REQUIRE(f.is_proper());
        REQUIRE(!RationalFunction(x * x, x - Polynomial(1)).is_proper());
    }
    SECTION("integer-scaled rendering") {
        const RationalFunction f(Polynomial(Rational(1, 2)),
                                 x - Polynomial(Rational(1, 2)));
        REQUIRE(f.to_string() == "1/(2*x - 1)");
        REQUIRE(RationalFunction(Polynomial{Rational(-13), Rational(3)},
                                 Polynomial{Rational(-5), Rational(1)})
                    .to_string() == "(3*x - 13)/(x - 5)");
    }
}
