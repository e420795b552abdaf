#pragma once

#include <string>
#include <utility>

#include "latsym/errors.hpp"
#include "latsym/polynomial.hpp"
#include "latsym/rational.hpp"

namespace latsym {

/// Quotient of two polynomials in canonical form: gcd(num, den) = 1 and
/// den monic.  The zero function is 0/1.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(1) {}
    RationalFunction(const Rational& c) : num_(c), den_(1) {}
    RationalFunction(int c) : num_(c), den_(1) {}
    RationalFunction(const Polynomial& p) : num_(p), den_(1) {}
    RationalFunction(Polynomial num, Polynomial den)
        : num_(std::move(num)), den_(std::move(den)) {
        canonicalize();
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return num_.is_constant() && is_polynomial(); }

    /// deg num <= deg den: bounded at infinity.  Every entry of an
    /// isospectral reduction lives in this subring.
    bool is_proper() const { return is_zero() || num_.degree() <= den_.degree(); }

    Rational evaluate(const Rational& x) const {
        const Rational d = den_.evaluate(x);
        if (d == 0)
            throw precondition_error("evaluation at a pole: " + format_rational(x) +
                                     " is a root of " + den_.to_string());
        return num_.evaluate(x) / d;
    }

    bool is_pole(const Rational& x) const { return den_.evaluate(x) == 0; }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        detail::check(!b.is_zero(), "division by zero rational function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }

    RationalFunction operator-() const { return RationalFunction(-num_, den_); }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
        return !(a == b);
    }

    /// "p(sym)/(q(sym))" with integer coefficients: both parts are scaled by
    /// the least common denominator (and reduced by the gcd of all integer
    /// numerators), so 1/2 / (x - 1/2) renders as 1/(2*x - 1).
    std::string to_string(const std::string& sym = "x") const {
        auto [n, d] = integer_scaled();
        if (n.is_zero()) return "0";
        const std::string ns = n.to_string(sym);
        if (d == Polynomial(1)) return ns;
        const std::string ds = d.to_string(sym);
        const bool np = n.degree() > 0 || n.coeff(0) < 0;
        const bool dp = d.degree() > 0;
        return (np ? "(" + ns + ")" : ns) + "/" + (dp ? "(" + ds + ")" : ds);
    }

    /// Same content scaled so numerator and denominator have coprime integer
    /// coefficients and the denominator a positive leading coefficient.
    std::pair<Polynomial, Polynomial> integer_scaled() const {
        BigInt lcm(1);
        for (const auto& c : num_.coeffs()) lcm = boost::multiprecision::lcm(lcm, denominator(c));
        for (const auto& c : den_.coeffs()) lcm = boost::multiprecision::lcm(lcm, denominator(c));
        BigInt gcd(0);
        auto fold = [&](const Polynomial& p) {
            for (const auto& c : p.coeffs())
                gcd = boost::multiprecision::gcd(gcd, BigInt(numerator(c * Rational(lcm))));
        };
        fold(num_);
        fold(den_);
        if (gcd == 0) gcd = 1;
        const Rational s = Rational(lcm, gcd);
        return {num_ * s, den_ * s};
    }

private:
    void canonicalize() {
        detail::check(!den_.is_zero(), "rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Polynomial(1);
            return;
        }
        const Polynomial g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.exact_div(g);
            den_ = den_.exact_div(g);
        }
        const Rational lead = den_.leading();
        if (lead != 1) {
            const Rational inv = Rational(1) / lead;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Polynomial num_, den_;
};

} // namespace latsym
