#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "latsym/errors.hpp"
#include "latsym/rational.hpp"

namespace latsym {

/// Dense univariate polynomial over Rational, coefficients stored
/// lowest-degree first.  The zero polynomial has an empty coefficient
/// vector and degree() == -1.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const Rational& c) { if (c != 0) c_.push_back(c); }
    Polynomial(int c) : Polynomial(Rational(c)) {}
    explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<Rational> coeffs)
        : c_(coeffs.begin(), coeffs.end()) { trim(); }

    /// The indeterminate itself (conventionally called lambda).
    static Polynomial variable() { return monomial(1, 1); }

    static Polynomial monomial(const Rational& coeff, int deg) {
        Polynomial p;
        if (coeff != 0) {
            p.c_.assign(static_cast<size_t>(deg) + 1, Rational(0));
            p.c_.back() = coeff;
        }
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const Rational& coeff(int k) const {
        static const Rational zero(0);
        if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
        return c_[static_cast<size_t>(k)];
    }

    const std::vector<Rational>& coeffs() const { return c_; }

    const Rational& leading() const {
        detail::check(!c_.empty(), "leading coefficient of zero polynomial");
        return c_.back();
    }

    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    bool is_constant() const { return c_.size() <= 1; }

    Rational evaluate(const Rational& x) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> d(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rational(static_cast<int>(k));
        return Polynomial(std::move(d));
    }

    Polynomial monic() const {
        detail::check(!is_zero(), "monic() of zero polynomial");
        return *this * (Rational(1) / leading());
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> prod(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                prod[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(prod));
    }

    friend Polynomial operator*(const Polynomial& a, const Rational& s) {
        if (s == 0) return {};
        Polynomial r = a;
        for (auto& c : r.c_) c *= s;
        return r;
    }
    friend Polynomial operator*(const Rational& s, const Polynomial& a) { return a * s; }

    Polynomial operator-() const { return *this * Rational(-1); }

    /// Euclidean division: returns (quotient, remainder) with
    /// deg remainder < deg divisor.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const {
        detail::check(!divisor.is_zero(), "polynomial division by zero");
        Polynomial rem = *this;
        if (rem.degree() < divisor.degree()) return {Polynomial{}, rem};
        std::vector<Rational> quot(static_cast<size_t>(rem.degree() - divisor.degree()) + 1,
                                   Rational(0));
        const Rational& lead = divisor.leading();
        while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
            const int shift = rem.degree() - divisor.degree();
            const Rational factor = rem.leading() / lead;
            quot[static_cast<size_t>(shift)] = factor;
            // rem -= factor * x^shift * divisor, dropping the cancelled leading term.
            for (size_t k = 0; k < divisor.c_.size(); ++k)
                rem.c_[static_cast<size_t>(shift) + k] -= factor * divisor.c_[k];
            rem.trim();
        }
        return {Polynomial(std::move(quot)), rem};
    }

    /// Division that is known to be exact; remainder must vanish.
    Polynomial exact_div(const Polynomial& divisor) const {
        auto [q, r] = divmod(divisor);
        detail::check(r.is_zero(), "polynomial division expected to be exact");
        return q;
    }

    Polynomial pow_u(unsigned e) const {
        Polynomial acc(1), base = *this;
        while (e) {
            if (e & 1u) acc = acc * base;
            base = base * base;
            e >>= 1u;
        }
        return acc;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Human-readable form like "3*x^2 - 1/2*x + 5", highest degree first.
    std::string to_string(const std::string& sym = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const Rational& c = coeff(k);
            if (c == 0) continue;
            const bool first = out.empty();
            const Rational mag = c < 0 ? Rational(-c) : c;
            if (!first) out += c < 0 ? " - " : " + ";
            else if (c < 0) out += "-";
            const bool unit = (mag == 1 && k > 0);
            if (!unit) out += format_rational(mag);
            if (k > 0) {
                if (!unit) out += "*";
                out += sym;
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt num(1), den(1);
    for (int i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return num / den;
}

/// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
inline Polynomial poly_gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

/// Product of the distinct irreducible factors of p (monic).
inline Polynomial squarefree_part(const Polynomial& p) {
    detail::check(!p.is_zero(), "squarefree part of zero polynomial");
    if (p.degree() == 0) return Polynomial(1);
    return p.exact_div(poly_gcd(p, p.derivative())).monic();
}

/// Yun's squarefree decomposition: p = lc(p) * prod f_i^{m_i} with the f_i
/// monic, pairwise coprime and squarefree; returned sorted by ascending
/// multiplicity m_i, factors of degree zero omitted.
inline std::vector<std::pair<Polynomial, int>>
squarefree_decomposition(const Polynomial& p) {
    detail::check(!p.is_zero(), "squarefree decomposition of zero polynomial");
    std::vector<std::pair<Polynomial, int>> out;
    if (p.degree() == 0) return out;
    const Polynomial q = p.monic();
    Polynomial g = poly_gcd(q, q.derivative());
    Polynomial b = q.exact_div(g);
    Polynomial c = q.derivative().exact_div(g);
    Polynomial d = c - b.derivative();
    for (int m = 1; b.degree() > 0; ++m) {
        Polynomial f = poly_gcd(b, d);
        if (f.degree() > 0) out.emplace_back(f, m);
        b = b.exact_div(f);
        c = d.exact_div(f);
        d = c - b.derivative();
    }
    return out;
}

} // namespace latsym
