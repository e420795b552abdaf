#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "latsym/errors.hpp"

namespace latsym {

/// Exact scalar type of the library: an arbitrary-precision rational that is
/// always stored gcd-reduced with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// p/q with sign normalisation; q must be nonzero.
inline Rational make_rational(const BigInt& p, const BigInt& q) {
    detail::require_input(q != 0, "rational with zero denominator");
    return q < 0 ? Rational(-p, -q) : Rational(p, q);
}

/// Parses "p", "p/q", with optional sign; anything else is an input error.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw input_error("empty rational literal");
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt p(text.substr(0, slash));
        BigInt q(text.substr(slash + 1));
        return make_rational(p, q);
    } catch (const std::exception&) {
        throw input_error("malformed rational literal: '" + text + "'");
    }
}

/// Canonical "p" or "p/q" rendering; inverse of parse_rational.
inline std::string format_rational(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace latsym
