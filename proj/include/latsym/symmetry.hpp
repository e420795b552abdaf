#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "latsym/errors.hpp"
#include "latsym/group.hpp"
#include "latsym/matrix.hpp"
#include "latsym/permutation.hpp"
#include "latsym/rational.hpp"
#include "latsym/rational_function.hpp"
#include "latsym/reduction.hpp"
#include "latsym/sites.hpp"
#include "latsym/walks.hpp"

namespace latsym {

namespace detail {

/// Complete vertex/edge-colored digraph; automorphisms are the
/// permutations preserving both colorings exactly.
struct ColoredGraph {
    std::vector<int> vertex;
    Matrix<int> edge;
    int size() const { return static_cast<int>(vertex.size()); }
};

/// Iterated neighborhood refinement of the vertex coloring.  Classes only
/// ever split, so a stable class count means a stable partition.  The
/// refined coloring is preserved by every color automorphism, which makes
/// it a sound (and cheap) pruning device for the backtracking search.
inline std::vector<int> refine_colors(const ColoredGraph& g) {
    const int n = g.size();
    std::vector<int> colors = g.vertex;
    size_t classes = 0;
    for (;;) {
        std::map<std::vector<int>, std::vector<int>> buckets;
        for (int i = 0; i < n; ++i) {
            std::vector<int> sig{colors[static_cast<size_t>(i)]};
            std::vector<std::vector<int>> neigh;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                neigh.push_back({colors[static_cast<size_t>(j)], g.edge(i, j), g.edge(j, i)});
            }
            std::sort(neigh.begin(), neigh.end());
            for (auto& t : neigh) sig.insert(sig.end(), t.begin(), t.end());
            buckets[std::move(sig)].push_back(i);
        }
        if (buckets.size() == classes) return colors;
        classes = buckets.size();
        int next = 0;
        for (const auto& [sig, members] : buckets) {
            for (int i : members) colors[static_cast<size_t>(i)] = next;
            ++next;
        }
    }
}

/// All permutations preserving the colored graph, by backtracking over
/// refinement classes.  Throws when the group would exceed max_count.
inline std::vector<Permutation> color_automorphisms(const ColoredGraph& g, size_t max_count) {
    const int n = g.size();
    const std::vector<int> refined = refine_colors(g);

    // Assign vertices smallest-class-first; ties by index for determinism.
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::vector<int> class_size(static_cast<size_t>(n), 0);
    for (int c : refined) ++class_size[static_cast<size_t>(c)];
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const int ca = class_size[static_cast<size_t>(refined[static_cast<size_t>(a)])];
        const int cb = class_size[static_cast<size_t>(refined[static_cast<size_t>(b)])];
        if (ca != cb) return ca < cb;
        return a < b;
    });

    std::vector<int> image(static_cast<size_t>(n), -1);
    std::vector<char> used(static_cast<size_t>(n), 0);
    std::vector<int> assigned;  // source vertices already mapped
    std::vector<Permutation> found;

    auto recurse = [&](auto&& self, size_t pos) -> void {
        if (pos == order.size()) {
            found.emplace_back(image);
            require_pre(found.size() <= max_count,
                        "automorphism group exceeds enumeration bound " +
                            std::to_string(max_count));
            return;
        }
        const int x = order[pos];
        for (int y = 0; y < n; ++y) {
            if (used[static_cast<size_t>(y)]) continue;
            if (refined[static_cast<size_t>(y)] != refined[static_cast<size_t>(x)]) continue;
            bool ok = true;
            for (int p : assigned) {
                const int q = image[static_cast<size_t>(p)];
                if (g.edge(x, p) != g.edge(y, q) || g.edge(p, x) != g.edge(q, y)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            image[static_cast<size_t>(x)] = y;
            used[static_cast<size_t>(y)] = 1;
            assigned.push_back(x);
            self(self, pos + 1);
            assigned.pop_back();
            used[static_cast<size_t>(y)] = 0;
            image[static_cast<size_t>(x)] = -1;
        }
    };
    recurse(recurse, 0);
    return found;
}

/// Dense integer ids for arbitrary ordered keys.
template <class Key>
class ColorIds {
public:
    int id(const Key& k) {
        auto [it, inserted] = ids_.emplace(k, static_cast<int>(ids_.size()));
        (void)inserted;
        return it->second;
    }

private:
    std::map<Key, int> ids_;
};

/// Colored graph whose edge colors are the stacked walk entries
/// ((H^k)_SS)_{ij} for k = 0..N-1; its automorphisms are exactly the
/// permutations commuting with every power block.
inline ColoredGraph walk_colored_graph(const WalkProfile& w) {
    const int s = w.sites.size();
    ColoredGraph g;
    g.vertex.resize(static_cast<size_t>(s));
    g.edge = Matrix<int>(s, s);
    ColorIds<std::vector<Rational>> ids;
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            std::vector<Rational> key;
            key.reserve(w.blocks.size());
            for (const auto& b : w.blocks) key.push_back(b(i, j));
            const int c = ids.id(key);
            g.edge(i, j) = c;
            if (i == j) g.vertex[static_cast<size_t>(i)] = c;
        }
    return g;
}

} // namespace detail

/// True iff M commutes with every (H^k)_SS for k = 0..N-1 (and hence, by
/// Cayley-Hamilton, for all k).  M may be any square exact matrix, not
/// only a permutation.
inline bool local_power_commute(const Hamiltonian& h, const SiteSet& sites,
                                const Matrix<Rational>& m) {
    detail::require_input(m.is_square() && m.rows() == sites.size(),
                          "commutant candidate must be |S| x |S|");
    const WalkProfile w = walk_profile(h, sites);
    for (const auto& b : w.blocks)
        if (!(b * m == m * b)) return false;
    return true;
}

/// True iff M commutes with the reduced matrix identically in lambda.
inline bool symbolic_commute(const ReducedMatrix& r, const Matrix<Rational>& m) {
    detail::require_input(m.is_square() && m.rows() == r.dim(),
                          "commutant candidate must match the reduced dimension");
    const Matrix<RationalFunction> mf =
        m.map([](const Rational& v) { return RationalFunction(Polynomial(v), Polynomial(1)); });
    return r.entries * mf == mf * r.entries;
}

/// The full group of permutations of S commuting with every walk block
/// (H^k)_SS — equivalently, with the reduced matrix R_S(H, lambda) for
/// every lambda.  Exact; pruned by walk-color refinement.
inline SymmetryGroup latent_permutation_group(const Hamiltonian& h, const SiteSet& sites) {
    detail::require_pre(sites.size() <= 10,
                        "latent symmetry search limited to 10 sites (got " +
                            std::to_string(sites.size()) + ")");
    const WalkProfile w = walk_profile(h, sites);
    const auto autos =
        detail::color_automorphisms(detail::walk_colored_graph(w), SymmetryGroup::kDefaultMaxOrder);
    return SymmetryGroup::from_elements(autos);
}

/// All permutations P of the full site set with P H P^{-1} = H.
inline SymmetryGroup global_automorphisms(const Hamiltonian& h) {
    detail::check(h.is_square(), "Hamiltonian must be square");
    const int n = h.rows();
    detail::require_pre(n <= 12, "automorphism search limited to 12 sites (got " +
                                     std::to_string(n) + ")");
    detail::ColoredGraph g;
    g.vertex.resize(static_cast<size_t>(n));
    g.edge = Matrix<int>(n, n);
    detail::ColorIds<Rational> ids;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int c = ids.id(h(i, j));
            g.edge(i, j) = c;
            if (i == j) g.vertex[static_cast<size_t>(i)] = c;
        }
    const auto autos = detail::color_automorphisms(g, SymmetryGroup::kDefaultMaxOrder);
    return SymmetryGroup::from_elements(autos);
}

/// Orbits cyclically permuted with full period by some automorphism of H:
/// for every group element of order n, its cycles of length exactly n, as
/// site sets in traversal order.  Duplicated underlying sets are reported
/// once.  Each returned orbit V is checked to satisfy
/// [P_VV, (H^k)_VV] = 0 for all k <= N-1.
inline std::vector<SiteSet> cyclic_orbit_sets(const Hamiltonian& h) {
    const SymmetryGroup g = global_automorphisms(h);
    std::vector<SiteSet> out;
    for (const auto& p : g.elements()) {
        const int n = p.order();
        if (n < 2) continue;
        for (const auto& cyc : p.cycles()) {
            if (static_cast<int>(cyc.size()) != n) continue;
            SiteSet v(cyc);
            bool fresh = true;
            for (const auto& seen : out)
                if (seen.same_sites(v)) {
                    fresh = false;
                    break;
                }
            if (!fresh) continue;

            // In traversal order the restriction of P to V is the basic
            // cyclic shift; it must commute with every walk block on V.
            std::vector<int> shift(cyc.size());
            for (size_t k = 0; k < cyc.size(); ++k)
                shift[k] = static_cast<int>((k + 1) % cyc.size());
            const Matrix<Rational> pv = Permutation(shift).matrix<Rational>();
            const WalkProfile w = walk_profile(h, v);
            for (const auto& b : w.blocks)
                detail::check(b * pv == pv * b,
                              "cyclic orbit fails to commute with its walk blocks");
            out.push_back(std::move(v));
        }
    }
    return out;
}

/// Result of the circulant reordering search for a reduced matrix.
struct CirculantForm {
    /// order[k] = position (in the input site order) placed at slot k.
    std::vector<int> order;
    bool is_symmetric_circulant = false;
    /// The reordered matrix when the flag is set; otherwise the input.
    Matrix<RationalFunction> canonical;

    Permutation reordering() const { return Permutation(order); }
};

namespace detail {

inline bool entries_symmetric(const Matrix<RationalFunction>& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.cols(); ++j)
            if (!(m(i, j) == m(j, i))) return false;
    return true;
}

inline bool entries_circulant(const Matrix<RationalFunction>& m) {
    const int n = m.rows();
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(m(i, j) == m(0, ((j - i) % n + n) % n))) return false;
    return true;
}

} // namespace detail

/// Searches for a relabeling of the reduced matrix that exhibits it as a
/// symmetric circulant.  Candidate orders are the identity plus the
/// dihedral reorderings (all rotations, both directions) of every full
/// cycle in the latent permutation group of the reduced matrix itself, so
/// the search space is the one in which the reordering is guaranteed to
/// exist whenever the matrix is latently cyclic.
inline CirculantForm circulant_canonicalize(const ReducedMatrix& r) {
    const int n = r.dim();
    detail::require_input(n >= 1, "empty reduced matrix");

    CirculantForm out;
    out.order.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out.order[static_cast<size_t>(i)] = i;
    out.canonical = r.entries;

    auto try_order = [&](const std::vector<int>& order) {
        Matrix<RationalFunction> m = r.entries.submatrix(order, order);
        if (detail::entries_circulant(m) && detail::entries_symmetric(m)) {
            out.order = order;
            out.is_symmetric_circulant = true;
            out.canonical = std::move(m);
            return true;
        }
        return false;
    };

    if (try_order(out.order)) return out;

    // Latent permutations of the reduced matrix: automorphisms of the
    // complete graph colored by (exact) rational-function entries.
    detail::ColoredGraph g;
    g.vertex.resize(static_cast<size_t>(n));
    g.edge = Matrix<int>(n, n);
    detail::ColorIds<std::string> ids;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int c = ids.id(r.entries(i, j).to_string());
            g.edge(i, j) = c;
            if (i == j) g.vertex[static_cast<size_t>(i)] = c;
        }
    const auto autos = detail::color_automorphisms(g, SymmetryGroup::kDefaultMaxOrder);

    for (const auto& p : autos) {
        if (p.order() != n) continue;
        const auto cyc = p.cycles();
        if (cyc.size() != 1 || static_cast<int>(cyc[0].size()) != n) continue;
        for (int dir = 0; dir < 2; ++dir) {
            std::vector<int> base = cyc[0];
            if (dir) std::reverse(base.begin(), base.end());
            for (int rot = 0; rot < n; ++rot) {
                std::vector<int> order;
                order.reserve(static_cast<size_t>(n));
                for (int k = 0; k < n; ++k)
                    order.push_back(base[static_cast<size_t>((k + rot) % n)]);
                if (try_order(order)) return out;
            }
        }
    }
    return out;
}

/// Exact identity relating walk blocks to the reduction's building blocks:
///
///   (H^k)_SS = (H^{k-1})_SS H_SS
///            + sum_{m=0}^{k-2} (H^m)_SS H_SSbar (H_SbarSbar)^{k-2-m} H_SbarS
///
/// for k >= 1.  Used by self-check batteries; returns true iff it holds.
inline bool walk_decomposition_identity_holds(const Hamiltonian& h, const SiteSet& sites,
                                              int k) {
    detail::require_input(k >= 1, "identity needs k >= 1");
    const auto p = detail::partition_blocks(h, sites);
    const int n = h.rows();

    std::vector<Matrix<Rational>> pow_ss;  // (H^m)_SS for m = 0..k
    Matrix<Rational> power = Matrix<Rational>::identity(n);
    for (int m = 0; m <= k; ++m) {
        pow_ss.push_back(power.submatrix(sites.indices(), sites.indices()));
        if (m < k) power = power * h;
    }
    std::vector<Matrix<Rational>> b_pow;  // B^t for t = 0..max(k-2, 0)
    Matrix<Rational> bp = Matrix<Rational>::identity(static_cast<int>(p.sbar.size()));
    for (int t = 0; t <= std::max(k - 2, 0); ++t) {
        b_pow.push_back(bp);
        if (t < k - 2) bp = bp * p.h_sbsb;
    }

    Matrix<Rational> rhs = pow_ss[static_cast<size_t>(k - 1)] * p.h_ss;
    if (!p.sbar.empty())
        for (int m = 0; m <= k - 2; ++m)
            rhs = rhs + pow_ss[static_cast<size_t>(m)] * p.h_ssb *
                            b_pow[static_cast<size_t>(k - 2 - m)] * p.h_sbs;
    return pow_ss[static_cast<size_t>(k)] == rhs;
}

} // namespace latsym
