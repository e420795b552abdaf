#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "latsym/matrix.hpp"
#include "latsym/polynomial.hpp"
#include "latsym/rational.hpp"
#include "latsym/rational_function.hpp"

namespace latsym {

/// Right-aligned column layout for a rectangular grid of cells.
inline std::string pad_grid(const std::vector<std::vector<std::string>>& cells,
                            const std::string& indent = "  ") {
    std::vector<size_t> width;
    for (const auto& row : cells)
        for (size_t j = 0; j < row.size(); ++j) {
            if (j >= width.size()) width.push_back(0);
            width[j] = std::max(width[j], row[j].size());
        }
    std::string out;
    for (const auto& row : cells) {
        out += indent;
        for (size_t j = 0; j < row.size(); ++j) {
            if (j) out += "  ";
            out += std::string(width[j] - row[j].size(), ' ') + row[j];
        }
        out += "\n";
    }
    return out;
}

inline std::string format_double(double v, int precision = 10) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v == 0.0 ? 0.0 : v);
    return buf;
}

inline std::string text_matrix(const Matrix<Rational>& m) {
    std::vector<std::vector<std::string>> cells(static_cast<size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            cells[static_cast<size_t>(i)].push_back(format_rational(m(i, j)));
    return pad_grid(cells);
}

inline std::string text_matrix(const Matrix<RationalFunction>& m, const std::string& sym = "x") {
    std::vector<std::vector<std::string>> cells(static_cast<size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            cells[static_cast<size_t>(i)].push_back(m(i, j).to_string(sym));
    return pad_grid(cells);
}

inline std::string text_matrix(const Matrix<double>& m, int precision = 10) {
    std::vector<std::vector<std::string>> cells(static_cast<size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            cells[static_cast<size_t>(i)].push_back(format_double(m(i, j), precision));
    return pad_grid(cells);
}

inline std::string latex_rational(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    const std::string sign = r < 0 ? "-" : "";
    const Rational mag = abs(r);
    return sign + "\\frac{" + numerator(mag).str() + "}{" + denominator(mag).str() + "}";
}

inline std::string latex_polynomial(const Polynomial& p, const std::string& sym = "x") {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        const Rational& c = p.coeff(k);
        if (c == 0) continue;
        const bool first = out.empty();
        const Rational mag = abs(c);
        if (!first)
            out += c < 0 ? " - " : " + ";
        else if (c < 0)
            out += "-";
        const bool unit = (mag == 1 && k > 0);
        if (!unit) out += latex_rational(mag);
        if (k > 0) {
            if (!unit) out += " ";
            out += sym;
            if (k > 1) out += "^{" + std::to_string(k) + "}";
        }
    }
    return out;
}

inline std::string latex_rational_function(const RationalFunction& f,
                                           const std::string& sym = "x") {
    const auto [num, den] = f.integer_scaled();
    if (num.is_zero()) return "0";
    if (den == Polynomial(1)) return latex_polynomial(num, sym);
    return "\\frac{" + latex_polynomial(num, sym) + "}{" + latex_polynomial(den, sym) + "}";
}

namespace detail {

template <class Cell>
std::string latex_matrix_impl(int rows, int cols, const Cell& cell) {
    std::string out = "\\begin{pmatrix}\n";
    for (int i = 0; i < rows; ++i) {
        out += "  ";
        for (int j = 0; j < cols; ++j) {
            if (j) out += " & ";
            out += cell(i, j);
        }
        if (i + 1 < rows) out += " \\\\";
        out += "\n";
    }
    return out + "\\end{pmatrix}";
}

} // namespace detail

inline std::string latex_matrix(const Matrix<Rational>& m) {
    return detail::latex_matrix_impl(
        m.rows(), m.cols(), [&](int i, int j) { return latex_rational(m(i, j)); });
}

inline std::string latex_matrix(const Matrix<RationalFunction>& m, const std::string& sym = "x") {
    return detail::latex_matrix_impl(
        m.rows(), m.cols(), [&](int i, int j) { return latex_rational_function(m(i, j), sym); });
}

inline std::string latex_matrix(const Matrix<double>& m, int precision = 10) {
    return detail::latex_matrix_impl(
        m.rows(), m.cols(), [&](int i, int j) { return format_double(m(i, j), precision); });
}

} // namespace latsym
