#pragma once

#include <vector>

#include "latsym/errors.hpp"
#include "latsym/matrix.hpp"
#include "latsym/polynomial.hpp"
#include "latsym/rational.hpp"

namespace latsym {

/// Characteristic data of a square rational matrix M.
///
/// resolvent_den is the monic p(x) = det(xI - M); char_poly is the
/// convention det(M - xI) = (-1)^n p(x).  adj_coeffs holds B_0..B_{n-1}
/// with adj(xI - M) = sum_k x^{n-1-k} B_k, so that
///     (xI - M) * adj(xI - M) = p(x) * I
/// holds as an exact polynomial identity.
struct CharpolyResult {
    Polynomial char_poly;
    Polynomial resolvent_den;
    std::vector<Matrix<Rational>> adj_coeffs;

    Matrix<Polynomial> adjugate() const {
        const int n = static_cast<int>(adj_coeffs.size());
        detail::check(n > 0, "adjugate of empty matrix");
        Matrix<Polynomial> a(adj_coeffs[0].rows(), adj_coeffs[0].cols());
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < a.rows(); ++i)
                for (int j = 0; j < a.cols(); ++j)
                    a(i, j) += Polynomial::monomial(adj_coeffs[static_cast<size_t>(k)](i, j),
                                                    n - 1 - k);
        return a;
    }
};

/// Faddeev-LeVerrier recursion: characteristic polynomial and resolvent
/// adjugate of M in one exact pass.
///
///   B_0 = I,   a_{n-k} = -tr(M B_{k-1}) / k,   B_k = M B_{k-1} + a_{n-k} I
///
/// yields p(x) = det(xI - M) = x^n + a_{n-1} x^{n-1} + ... + a_0 and the
/// B_k as the adjugate coefficients.  The closing identity
/// M B_{n-1} + a_0 I = 0 is asserted.
inline CharpolyResult faddeev_leverrier(const Matrix<Rational>& m) {
    detail::check(m.is_square(), "characteristic polynomial of non-square matrix");
    const int n = m.rows();
    detail::check(n > 0, "characteristic polynomial of empty matrix");

    std::vector<Rational> a(static_cast<size_t>(n) + 1, Rational(0));
    a[static_cast<size_t>(n)] = 1;

    auto trace_of = [](const Matrix<Rational>& x) {
        Rational t(0);
        for (int i = 0; i < x.rows(); ++i) t += x(i, i);
        return t;
    };

    CharpolyResult out;
    Matrix<Rational> b = Matrix<Rational>::identity(n);
    out.adj_coeffs.push_back(b);
    Matrix<Rational> mb = m * b;
    for (int k = 1; k <= n; ++k) {
        const Rational ak = -trace_of(mb) / Rational(k);
        a[static_cast<size_t>(n - k)] = ak;
        if (k == n) {
            Matrix<Rational> closure = mb;
            for (int i = 0; i < n; ++i) closure(i, i) += ak;
            detail::check(closure == Matrix<Rational>(n, n),
                          "Faddeev-LeVerrier closure identity failed");
            break;
        }
        b = mb;
        for (int i = 0; i < n; ++i) b(i, i) += ak;
        out.adj_coeffs.push_back(b);
        mb = m * b;
    }

    out.resolvent_den = Polynomial(a);
    out.char_poly = (n % 2 == 0) ? out.resolvent_den : -out.resolvent_den;
    return out;
}

/// Samuelson-Berkowitz: monic det(xI - M) without divisions, built up from
/// the characteristic polynomials of the leading principal submatrices.
/// Independent of faddeev_leverrier by construction; used as its
/// cross-check and as the second reduction path's engine.
inline Polynomial berkowitz_charpoly(const Matrix<Rational>& m) {
    detail::check(m.is_square(), "characteristic polynomial of non-square matrix");
    const int n = m.rows();
    detail::check(n > 0, "characteristic polynomial of empty matrix");

    Polynomial p = Polynomial::variable() - Polynomial(m(0, 0));
    for (int r = 2; r <= n; ++r) {
        // Leading block B, border row R / column S, corner a.
        const int rb = r - 1;
        std::vector<Rational> u(static_cast<size_t>(rb));
        for (int i = 0; i < rb; ++i) u[static_cast<size_t>(i)] = m(i, r - 1);

        // w_j = R B^j S for j = 0..rb-1.
        std::vector<Rational> w(static_cast<size_t>(rb));
        for (int j = 0; j < rb; ++j) {
            Rational dot(0);
            for (int i = 0; i < rb; ++i) dot += m(r - 1, i) * u[static_cast<size_t>(i)];
            w[static_cast<size_t>(j)] = dot;
            if (j + 1 < rb) {
                std::vector<Rational> next(static_cast<size_t>(rb), Rational(0));
                for (int i = 0; i < rb; ++i)
                    for (int k = 0; k < rb; ++k)
                        next[static_cast<size_t>(i)] += m(i, k) * u[static_cast<size_t>(k)];
                u = std::move(next);
            }
        }

        // p_r(x) = (x - a) p_{r-1}(x) - sum_j w_j h_j(x) with
        // h_j(x) = sum_{k>j} c_k x^{k-1-j}  (adjugate of xI - B via Horner).
        Polynomial next = (Polynomial::variable() - Polynomial(m(r - 1, r - 1))) * p;
        for (int j = 0; j < rb; ++j) {
            if (w[static_cast<size_t>(j)] == 0) continue;
            std::vector<Rational> h(static_cast<size_t>(p.degree() - j), Rational(0));
            for (int k = j + 1; k <= p.degree(); ++k)
                h[static_cast<size_t>(k - 1 - j)] = p.coeff(k);
            next -= Polynomial(std::move(h)) * w[static_cast<size_t>(j)];
        }
        p = std::move(next);
    }
    detail::check(p.is_monic() && p.degree() == n, "Berkowitz output not monic of degree n");
    return p;
}

/// p(M) by Horner's scheme.
inline Matrix<Rational> poly_eval_matrix(const Polynomial& p, const Matrix<Rational>& m) {
    detail::check(m.is_square(), "polynomial of non-square matrix");
    const int n = m.rows();
    Matrix<Rational> acc(n, n);
    for (int k = p.degree(); k >= 0; --k) {
        acc = acc * m;
        for (int i = 0; i < n; ++i) acc(i, i) += p.coeff(k);
    }
    return acc;
}

} // namespace latsym
