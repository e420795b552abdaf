#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "latsym/errors.hpp"
#include "latsym/permutation.hpp"

namespace latsym {

enum class GroupTag { cyclic, dihedral, other_abelian, other_nonabelian };

inline std::string to_string(GroupTag tag) {
    switch (tag) {
        case GroupTag::cyclic: return "cyclic";
        case GroupTag::dihedral: return "dihedral";
        case GroupTag::other_abelian: return "other_abelian";
        case GroupTag::other_nonabelian: return "other_nonabelian";
    }
    return "?";
}

/// A finite group of permutations of a fixed point set, stored as the full
/// (closed) element list in sorted order.  Construction verifies closure,
/// the identity, and inverses, then classifies the group:
///   - cyclic(n): some element has order |G| = n;
///   - dihedral(n): |G| = 2n with r of order n, s of order 2, s r s = r^-1;
///   - otherwise other_abelian / other_nonabelian by pairwise commutation.
/// The trivial group classifies as cyclic(1).
class SymmetryGroup {
public:
    SymmetryGroup() = default;

    static SymmetryGroup from_elements(std::vector<Permutation> elements) {
        detail::require_input(!elements.empty(), "a group needs at least the identity");
        const int degree = elements.front().size();
        for (const auto& p : elements)
            detail::require_input(p.size() == degree, "mixed permutation degrees in group");
        std::sort(elements.begin(), elements.end());
        elements.erase(std::unique(elements.begin(), elements.end()), elements.end());

        SymmetryGroup g;
        g.elements_ = std::move(elements);
        g.verify_group_axioms();
        g.pick_generators();
        g.classify();
        return g;
    }

    static SymmetryGroup from_generators(const std::vector<Permutation>& generators,
                                         int degree,
                                         size_t max_order = kDefaultMaxOrder) {
        std::set<Permutation> closed;
        closed.insert(Permutation::identity(degree));
        std::vector<Permutation> frontier(closed.begin(), closed.end());
        while (!frontier.empty()) {
            std::vector<Permutation> next;
            for (const auto& e : frontier)
                for (const auto& gen : generators) {
                    detail::require_input(gen.size() == degree,
                                          "generator degree mismatch");
                    Permutation p = gen * e;
                    if (closed.insert(p).second) {
                        detail::require_pre(closed.size() <= max_order,
                                            "group closure exceeds enumeration bound " +
                                                std::to_string(max_order));
                        next.push_back(std::move(p));
                    }
                }
            frontier = std::move(next);
        }
        return from_elements(std::vector<Permutation>(closed.begin(), closed.end()));
    }

    static constexpr size_t kDefaultMaxOrder = 40320;  // 8!

    size_t order() const { return elements_.size(); }
    int degree() const { return elements_.empty() ? 0 : elements_.front().size(); }
    const std::vector<Permutation>& elements() const { return elements_; }
    const std::vector<Permutation>& generators() const { return generators_; }
    GroupTag tag() const { return tag_; }
    /// The n of cyclic(n) / dihedral(n); 0 for the other tags.
    size_t tag_n() const { return tag_n_; }
    bool is_trivial() const { return elements_.size() == 1; }

    bool is_abelian() const {
        for (const auto& a : elements_)
            for (const auto& b : elements_)
                if (!(a * b == b * a)) return false;
        return true;
    }

    bool contains(const Permutation& p) const {
        return std::binary_search(elements_.begin(), elements_.end(), p);
    }

    /// True iff every element of the other group is an element of this one.
    bool contains_group(const SymmetryGroup& other) const {
        for (const auto& p : other.elements_)
            if (!contains(p)) return false;
        return true;
    }

    std::string tag_string() const {
        std::string s = latsym::to_string(tag_);
        if (tag_ == GroupTag::cyclic || tag_ == GroupTag::dihedral)
            s += "(" + std::to_string(tag_n_) + ")";
        return s;
    }

    /// Conjugacy classes as index lists into elements(), each sorted, the
    /// classes ordered by their smallest member.
    std::vector<std::vector<size_t>> conjugacy_classes() const {
        std::vector<std::vector<size_t>> classes;
        std::vector<char> done(elements_.size(), 0);
        for (size_t i = 0; i < elements_.size(); ++i) {
            if (done[i]) continue;
            std::vector<size_t> cls;
            for (const auto& g : elements_) {
                const Permutation c = g * elements_[i] * g.inverse();
                const size_t j = index_of(c);
                if (!done[j]) {
                    done[j] = 1;
                    cls.push_back(j);
                }
            }
            std::sort(cls.begin(), cls.end());
            classes.push_back(std::move(cls));
        }
        return classes;
    }

private:
    size_t index_of(const Permutation& p) const {
        auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
        detail::check(it != elements_.end() && *it == p, "element not in group");
        return static_cast<size_t>(it - elements_.begin());
    }

    void verify_group_axioms() const {
        detail::check(contains(Permutation::identity(degree())),
                      "group does not contain the identity");
        for (const auto& a : elements_) {
            detail::require_input(contains(a.inverse()), "group not closed under inverse");
            for (const auto& b : elements_)
                detail::require_input(contains(a * b), "group not closed under composition");
        }
    }

    void pick_generators() {
        generators_.clear();
        if (elements_.size() == 1) return;
        std::set<Permutation> span;
        span.insert(Permutation::identity(degree()));
        for (const auto& p : elements_) {
            if (span.count(p)) continue;
            generators_.push_back(p);
            // grow the generated subgroup
            std::vector<Permutation> frontier(span.begin(), span.end());
            span.insert(p);
            frontier.push_back(p);
            while (!frontier.empty()) {
                std::vector<Permutation> next;
                for (const auto& e : frontier)
                    for (const auto& gen : generators_) {
                        Permutation q = gen * e;
                        if (span.insert(q).second) next.push_back(std::move(q));
                    }
                frontier = std::move(next);
            }
            if (span.size() == elements_.size()) break;
        }
    }

    void classify() {
        const size_t n = elements_.size();
        for (const auto& g : elements_)
            if (static_cast<size_t>(g.order()) == n) {
                tag_ = GroupTag::cyclic;
                tag_n_ = n;
                return;
            }
        if (n % 2 == 0 && n >= 4) {
            const size_t half = n / 2;
            for (const auto& r : elements_) {
                if (static_cast<size_t>(r.order()) != half) continue;
                for (const auto& s : elements_) {
                    if (s.order() != 2) continue;
                    if (s * r * s == r.inverse()) {
                        tag_ = GroupTag::dihedral;
                        tag_n_ = half;
                        return;
                    }
                }
            }
        }
        tag_ = is_abelian() ? GroupTag::other_abelian : GroupTag::other_nonabelian;
        tag_n_ = 0;
    }

    std::vector<Permutation> elements_;
    std::vector<Permutation> generators_;
    GroupTag tag_ = GroupTag::cyclic;
    size_t tag_n_ = 1;
};

} // namespace latsym
