#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "latsym/errors.hpp"
#include "latsym/polynomial.hpp"
#include "latsym/rational.hpp"

namespace latsym {

/// All complex roots of p by Durand-Kerner iteration (double precision,
/// reporting quality only; exact statements always go through polynomial
/// arithmetic).  p should be squarefree for good convergence.
inline std::vector<std::complex<double>> durand_kerner_roots(const Polynomial& p) {
    const int n = p.degree();
    detail::check(n >= 0, "roots of the zero polynomial");
    if (n == 0) return {};

    std::vector<std::complex<double>> c(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[static_cast<size_t>(k)] = to_double(p.coeff(k));
    for (int k = 0; k <= n; ++k) c[static_cast<size_t>(k)] /= c[static_cast<size_t>(n)];

    auto eval = [&](std::complex<double> x) {
        std::complex<double> acc = 0;
        for (int k = n; k >= 0; --k) acc = acc * x + c[static_cast<size_t>(k)];
        return acc;
    };

    // Start on a slightly irrational spiral to avoid symmetric stalemates.
    std::vector<std::complex<double>> r(static_cast<size_t>(n));
    const std::complex<double> seed(0.4, 0.9);
    std::complex<double> acc = 1;
    for (int k = 0; k < n; ++k) {
        acc *= seed;
        r[static_cast<size_t>(k)] = acc;
    }

    for (int iter = 0; iter < 500; ++iter) {
        double shift = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> denom = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= r[static_cast<size_t>(i)] - r[static_cast<size_t>(j)];
            const std::complex<double> delta = eval(r[static_cast<size_t>(i)]) / denom;
            r[static_cast<size_t>(i)] -= delta;
            shift = std::max(shift, std::abs(delta));
        }
        if (shift < 1e-14) break;
    }
    return r;
}

} // namespace latsym
