#pragma once

#include <utility>
#include <vector>

#include "latsym/errors.hpp"
#include "latsym/polynomial.hpp"
#include "latsym/rational.hpp"

namespace latsym {

/// Dense row-major matrix over an arbitrary commutative ring T.
/// T{} must be the additive and T(1) the multiplicative identity.
template <class T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols, const T& fill = T{})
        : rows_(rows), cols_(cols),
          d_(static_cast<size_t>(rows) * static_cast<size_t>(cols), fill) {
        detail::check(rows >= 0 && cols >= 0, "negative matrix dimension");
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(int i, int j) { return d_[index(i, j)]; }
    const T& operator()(int i, int j) const { return d_[index(i, j)]; }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        detail::check(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix shape mismatch in +");
        Matrix r = a;
        for (size_t k = 0; k < r.d_.size(); ++k) r.d_[k] = r.d_[k] + b.d_[k];
        return r;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        detail::check(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix shape mismatch in -");
        Matrix r = a;
        for (size_t k = 0; k < r.d_.size(); ++k) r.d_[k] = r.d_[k] - b.d_[k];
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        detail::check(a.cols_ == b.rows_, "matrix shape mismatch in *");
        Matrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T{}) continue;
                for (int j = 0; j < b.cols_; ++j) r(i, j) = r(i, j) + aik * b(k, j);
            }
        return r;
    }

    friend Matrix operator*(const T& s, const Matrix& a) {
        Matrix r = a;
        for (auto& v : r.d_) v = s * v;
        return r;
    }

    Matrix operator-() const {
        Matrix r = *this;
        for (auto& v : r.d_) v = T{} - v;
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    /// Rows and columns picked by index lists (order significant).
    Matrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
        Matrix r(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j) {
                detail::check(rows[i] >= 0 && rows[i] < rows_ && cols[j] >= 0 && cols[j] < cols_,
                              "submatrix index out of range");
                r(static_cast<int>(i), static_cast<int>(j)) = (*this)(rows[i], cols[j]);
            }
        return r;
    }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < cols_; ++j)
                if (!((*this)(i, j) == (*this)(j, i))) return false;
        return true;
    }

    template <class F>
    auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
        Matrix<decltype(f(std::declval<const T&>()))> r(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    size_t index(int i, int j) const {
        detail::check(i >= 0 && i < rows_ && j >= 0 && j < cols_, "matrix index out of range");
        return static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j);
    }

    int rows_, cols_;
    std::vector<T> d_;
};

inline Rational exact_ring_div(const Rational& a, const Rational& b) { return a / b; }
inline Polynomial exact_ring_div(const Polynomial& a, const Polynomial& b) {
    return a.exact_div(b);
}

/// Determinant by Gaussian elimination over a field (entries must support
/// exact division by any nonzero element, e.g. Rational or
/// RationalFunction).
template <class T>
T det_field(Matrix<T> m) {
    detail::check(m.is_square(), "determinant of non-square matrix");
    const int n = m.rows();
    T det(1);
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i)
            if (!(m(i, k) == T{})) { pivot = i; break; }
        if (pivot < 0) return T{};
        if (pivot != k) {
            for (int j = k; j < n; ++j) std::swap(m(k, j), m(pivot, j));
            det = T{} - det;
        }
        det = det * m(k, k);
        for (int i = k + 1; i < n; ++i) {
            if (m(i, k) == T{}) continue;
            const T f = m(i, k) / m(k, k);
            for (int j = k; j < n; ++j) m(i, j) = m(i, j) - f * m(k, j);
        }
    }
    return det;
}

/// Inverse over a field; throws on singular input.
template <class T>
Matrix<T> field_inverse(Matrix<T> m) {
    detail::check(m.is_square(), "inverse of non-square matrix");
    const int n = m.rows();
    Matrix<T> inv = Matrix<T>::identity(n);
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i)
            if (!(m(i, k) == T{})) { pivot = i; break; }
        detail::check(pivot >= 0, "singular matrix has no inverse");
        if (pivot != k)
            for (int j = 0; j < n; ++j) {
                std::swap(m(k, j), m(pivot, j));
                std::swap(inv(k, j), inv(pivot, j));
            }
        const T d = m(k, k);
        for (int j = 0; j < n; ++j) {
            m(k, j) = m(k, j) / d;
            inv(k, j) = inv(k, j) / d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || m(i, k) == T{}) continue;
            const T f = m(i, k);
            for (int j = 0; j < n; ++j) {
                m(i, j) = m(i, j) - f * m(k, j);
                inv(i, j) = inv(i, j) - f * inv(k, j);
            }
        }
    }
    return inv;
}

/// Fraction-free determinant (Bareiss).  Valid over any integral domain
/// with exact division, e.g. Rational or Polynomial entries.
template <class T>
T det_bareiss(Matrix<T> m) {
    detail::check(m.is_square(), "determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) return T(1);
    T sign(1), prev(1);
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == T{}) {
            int pivot = -1;
            for (int i = k + 1; i < n; ++i)
                if (!(m(i, k) == T{})) { pivot = i; break; }
            if (pivot < 0) return T{};
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
            sign = T{} - sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                T num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                m(i, j) = exact_ring_div(num, prev);
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

} // namespace latsym
