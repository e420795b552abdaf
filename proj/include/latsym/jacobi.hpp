#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "latsym/errors.hpp"
#include "latsym/matrix.hpp"

namespace latsym {

inline double entry_norm_max(const Matrix<double>& m) {
    double best = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) best = std::max(best, std::abs(m(i, j)));
    return best;
}

struct EigenDecomposition {
    std::vector<double> values;                // ascending
    std::vector<std::vector<double>> vectors;  // vectors[k]: unit eigenvector of values[k]
    double off_residual = 0.0;                 // achieved max off-diagonal magnitude
};

/// Cyclic Jacobi diagonalization of a real symmetric matrix.  Sweeps
/// rotate every off-diagonal pair until the largest off-diagonal entry
/// falls below rel_tol * max|entry|; eigenpairs come back sorted by
/// eigenvalue.
inline EigenDecomposition jacobi_eigensolver(const Matrix<double>& input,
                                             double rel_tol = 1e-12) {
    detail::require_pre(input.is_square(), "eigensolver needs a square matrix");
    const int n = input.rows();
    Matrix<double> a = input;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            detail::require_pre(std::abs(a(i, j) - a(j, i)) == 0.0,
                                "eigensolver needs a symmetric matrix");

    Matrix<double> v = Matrix<double>::identity(n);
    const double scale = entry_norm_max(a);
    const double threshold = rel_tol * std::max(scale, 1e-300);

    auto max_off = [&]() {
        double best = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) best = std::max(best, std::abs(a(i, j)));
        return best;
    };

    int sweeps = 0;
    while (max_off() > threshold) {
        detail::check(++sweeps <= 100, "Jacobi iteration failed to converge in 100 sweeps");
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= threshold * 1e-3) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }

    EigenDecomposition out;
    out.off_residual = max_off();
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });
    for (int k : order) {
        out.values.push_back(a(k, k));
        std::vector<double> vec(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) vec[static_cast<size_t>(i)] = v(i, k);
        out.vectors.push_back(std::move(vec));
    }
    return out;
}

} // namespace latsym
