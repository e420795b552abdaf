#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "latsym/errors.hpp"
#include "latsym/matrix.hpp"
#include "latsym/rational.hpp"

namespace latsym {

/// A permutation of {0, ..., n-1}, stored as its image list.
/// The associated matrix P has P(image(i), i) = 1, so that for a vector v
/// (P v)(image(i)) = v(i), and conjugation acts as
/// (P A P^T)(image(i), image(j)) = A(i, j).
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> image) : img_(std::move(image)) {
        std::vector<char> seen(img_.size(), 0);
        for (int v : img_) {
            detail::require_input(v >= 0 && v < static_cast<int>(img_.size()),
                                  "permutation image out of range");
            detail::require_input(!seen[static_cast<size_t>(v)],
                                  "permutation image is not a bijection");
            seen[static_cast<size_t>(v)] = 1;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> img(static_cast<size_t>(n));
        std::iota(img.begin(), img.end(), 0);
        return Permutation(std::move(img));
    }

    /// Permutation of {0..n-1} cycling the listed points in order and
    /// fixing everything else.
    static Permutation from_cycle(int n, const std::vector<int>& cycle) {
        Permutation p = identity(n);
        for (size_t k = 0; k < cycle.size(); ++k) {
            int from = cycle[k];
            int to = cycle[(k + 1) % cycle.size()];
            detail::require_input(from >= 0 && from < n && to >= 0 && to < n,
                                  "cycle point out of range");
            p.img_[static_cast<size_t>(from)] = to;
        }
        return Permutation(p.img_);  // revalidates bijectivity
    }

    int size() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[static_cast<size_t>(i)]; }
    const std::vector<int>& image() const { return img_; }

    bool is_identity() const {
        for (int i = 0; i < size(); ++i)
            if (img_[static_cast<size_t>(i)] != i) return false;
        return true;
    }

    /// Composition acting right-to-left: (a * b)(i) = a(b(i)).
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        detail::check(a.size() == b.size(), "permutation size mismatch in composition");
        std::vector<int> img(a.img_.size());
        for (int i = 0; i < a.size(); ++i) img[static_cast<size_t>(i)] = a(b(i));
        Permutation p;
        p.img_ = std::move(img);
        return p;
    }

    Permutation inverse() const {
        std::vector<int> img(img_.size());
        for (int i = 0; i < size(); ++i) img[static_cast<size_t>(img_[static_cast<size_t>(i)])] = i;
        Permutation p;
        p.img_ = std::move(img);
        return p;
    }

    int order() const {
        Permutation acc = *this;
        int k = 1;
        while (!acc.is_identity()) {
            acc = acc * (*this);
            ++k;
            detail::check(k <= 1 << 20, "runaway permutation order");
        }
        return k;
    }

    int fixed_points() const {
        int c = 0;
        for (int i = 0; i < size(); ++i)
            if (img_[static_cast<size_t>(i)] == i) ++c;
        return c;
    }

    /// Cycle decomposition; each cycle starts at its smallest point and the
    /// cycles are ordered by that point.  Fixed points are omitted unless
    /// include_fixed is set.
    std::vector<std::vector<int>> cycles(bool include_fixed = false) const {
        std::vector<std::vector<int>> out;
        std::vector<char> done(img_.size(), 0);
        for (int i = 0; i < size(); ++i) {
            if (done[static_cast<size_t>(i)]) continue;
            std::vector<int> cyc;
            int j = i;
            do {
                done[static_cast<size_t>(j)] = 1;
                cyc.push_back(j);
                j = img_[static_cast<size_t>(j)];
            } while (j != i);
            if (cyc.size() > 1 || include_fixed) out.push_back(std::move(cyc));
        }
        return out;
    }

    template <class T = Rational>
    Matrix<T> matrix() const {
        Matrix<T> p(size(), size());
        for (int i = 0; i < size(); ++i) p(img_[static_cast<size_t>(i)], i) = T(1);
        return p;
    }

    /// True iff conjugation leaves A unchanged: A(pi(i), pi(j)) == A(i, j)
    /// for all i, j; equivalently the permutation matrix commutes with A.
    template <class T>
    bool preserves(const Matrix<T>& a) const {
        detail::check(a.is_square() && a.rows() == size(),
                      "matrix size does not match permutation");
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j)
                if (!(a((*this)(i), (*this)(j)) == a(i, j))) return false;
        return true;
    }

    /// Cycle notation with 1-based points, e.g. "(1 2 3)(5 6)"; "id" when
    /// everything is fixed.
    std::string to_string() const {
        const auto cyc = cycles();
        if (cyc.empty()) return "id";
        std::string out;
        for (const auto& c : cyc) {
            out += '(';
            for (size_t k = 0; k < c.size(); ++k) {
                if (k) out += ' ';
                out += std::to_string(c[k] + 1);
            }
            out += ')';
        }
        return out;
    }

    friend bool operator==(const Permutation& a, const Permutation& b) {
        return a.img_ == b.img_;
    }
    friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
    friend bool operator<(const Permutation& a, const Permutation& b) {
        return a.img_ < b.img_;
    }

private:
    std::vector<int> img_;
};

} // namespace latsym
