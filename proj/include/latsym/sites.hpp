#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "latsym/errors.hpp"
#include "latsym/matrix.hpp"
#include "latsym/rational.hpp"

namespace latsym {

using Hamiltonian = Matrix<Rational>;

/// An ordered set of distinct site indices (0-based internally; the
/// user-facing convention in files and on the command line is 1-based).
/// The order is significant: it fixes the row/column order of reduced
/// matrices built over the set.
class SiteSet {
public:
    SiteSet() = default;
    explicit SiteSet(std::vector<int> indices) : idx_(std::move(indices)) {
        std::set<int> seen;
        for (int s : idx_) {
            detail::require_input(s >= 0, "negative site index");
            detail::require_input(seen.insert(s).second,
                                  "duplicate site index " + std::to_string(s + 1));
        }
    }

    static SiteSet from_one_based(const std::vector<int>& sites) {
        std::vector<int> z;
        z.reserve(sites.size());
        for (int s : sites) {
            detail::require_input(s >= 1, "site indices are 1-based");
            z.push_back(s - 1);
        }
        return SiteSet(z);
    }

    const std::vector<int>& indices() const { return idx_; }
    int size() const { return static_cast<int>(idx_.size()); }
    bool empty() const { return idx_.empty(); }
    int operator[](int k) const { return idx_[static_cast<size_t>(k)]; }

    bool contains(int site) const {
        return std::find(idx_.begin(), idx_.end(), site) != idx_.end();
    }

    /// Position of a site within the set, -1 if absent.
    int position_of(int site) const {
        auto it = std::find(idx_.begin(), idx_.end(), site);
        return it == idx_.end() ? -1 : static_cast<int>(it - idx_.begin());
    }

    void validate_for(int total_sites) const {
        for (int s : idx_)
            detail::require_input(s < total_sites,
                                  "site index " + std::to_string(s + 1) +
                                      " out of range for a " + std::to_string(total_sites) +
                                      "-site system");
    }

    /// All sites not in the set, ascending.
    std::vector<int> complement(int total_sites) const {
        validate_for(total_sites);
        std::vector<int> out;
        for (int s = 0; s < total_sites; ++s)
            if (!contains(s)) out.push_back(s);
        return out;
    }

    std::vector<int> to_one_based() const {
        std::vector<int> out = idx_;
        for (int& s : out) ++s;
        return out;
    }

    friend bool operator==(const SiteSet& a, const SiteSet& b) { return a.idx_ == b.idx_; }

    /// Content equality ignoring order.
    bool same_sites(const SiteSet& o) const {
        std::vector<int> a = idx_, b = o.idx_;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }

private:
    std::vector<int> idx_;
};

} // namespace latsym
