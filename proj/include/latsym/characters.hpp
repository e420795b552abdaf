#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "latsym/errors.hpp"
#include "latsym/group.hpp"
#include "latsym/polynomial.hpp"
#include "latsym/rational.hpp"

namespace latsym {

/// n-th cyclotomic polynomial, by recursive division of x^n - 1 by the
/// cyclotomic polynomials of the proper divisors of n.
inline Polynomial cyclotomic_polynomial(size_t n) {
    detail::require_input(n >= 1, "cyclotomic index must be positive");
    std::vector<Rational> xn(n + 1, Rational(0));
    xn[0] = -1;
    xn[n] = 1;
    Polynomial p(std::move(xn));
    for (size_t d = 1; d < n; ++d)
        if (n % d == 0) p = p.exact_div(cyclotomic_polynomial(d));
    return p;
}

/// Exact arithmetic in Q(omega) with omega a primitive n-th root of
/// unity: elements are polynomials in omega reduced modulo the n-th
/// cyclotomic polynomial.  Rational elements reduce to constants, which
/// is how "this sum must be an integer" assertions are discharged.
class CyclotomicField {
public:
    explicit CyclotomicField(size_t n) : n_(n), phi_(cyclotomic_polynomial(n)) {}

    size_t n() const { return n_; }
    const Polynomial& modulus() const { return phi_; }

    Polynomial reduce(const Polynomial& p) const { return p.divmod(phi_).second; }

    /// omega^m for any integer exponent (negative allowed).
    Polynomial omega_power(long long m) const {
        const long long r = ((m % static_cast<long long>(n_)) + static_cast<long long>(n_)) %
                            static_cast<long long>(n_);
        return reduce(Polynomial::monomial(Rational(1), static_cast<int>(r)));
    }

    Polynomial multiply(const Polynomial& a, const Polynomial& b) const {
        return reduce(a * b);
    }

    /// Complex conjugation: omega -> omega^{n-1}.
    Polynomial conjugate(const Polynomial& p) const {
        Polynomial out;
        for (int m = 0; m <= p.degree(); ++m) {
            if (p.coeff(m) == 0) continue;
            out += Polynomial(p.coeff(m)) * omega_power(-(static_cast<long long>(m)));
        }
        return reduce(out);
    }

    bool is_rational(const Polynomial& p) const { return reduce(p).degree() <= 0; }

    Rational to_rational(const Polynomial& p) const {
        const Polynomial r = reduce(p);
        detail::check(r.degree() <= 0, "cyclotomic element is not rational");
        return r.coeff(0);
    }

private:
    size_t n_;
    Polynomial phi_;
};

struct IrrepInfo {
    std::string label;
    int dim = 1;
};

/// Closed-form character tables for the cyclic and dihedral families.
/// Group elements are addressed abstractly as (reflection?, power j):
/// rotations r^j, and for dihedral groups the reflections s r^j.
class CharacterTable {
public:
    static CharacterTable cyclic(size_t n) {
        CharacterTable t(GroupTag::cyclic, n);
        for (size_t k = 0; k < n; ++k)
            t.irreps_.push_back({"chi_" + std::to_string(k), 1});
        return t;
    }

    static CharacterTable dihedral(size_t n) {
        detail::require_input(n >= 2, "dihedral table needs n >= 2");
        CharacterTable t(GroupTag::dihedral, n);
        t.irreps_.push_back({"A1", 1});
        t.irreps_.push_back({"A2", 1});
        if (n % 2 == 0) {
            t.irreps_.push_back({"B1", 1});
            t.irreps_.push_back({"B2", 1});
        }
        for (size_t k = 1; 2 * k < n; ++k)
            t.irreps_.push_back({"E" + std::to_string(k), 2});
        return t;
    }

    GroupTag tag() const { return tag_; }
    size_t n() const { return n_; }
    size_t group_order() const { return tag_ == GroupTag::dihedral ? 2 * n_ : n_; }
    const std::vector<IrrepInfo>& irreps() const { return irreps_; }
    const CyclotomicField& field() const { return field_; }

    /// All abstract element forms of the group, rotations first.
    std::vector<std::pair<bool, size_t>> element_forms() const {
        std::vector<std::pair<bool, size_t>> out;
        for (size_t j = 0; j < n_; ++j) out.emplace_back(false, j);
        if (tag_ == GroupTag::dihedral)
            for (size_t j = 0; j < n_; ++j) out.emplace_back(true, j);
        return out;
    }

    /// Character value of irrep i at the element (reflection?, j), as a
    /// reduced cyclotomic element.
    Polynomial value(size_t irrep, bool reflection, size_t j) const {
        detail::check(irrep < irreps_.size(), "irrep index out of range");
        detail::check(j < n_, "rotation power out of range");
        const long long jj = static_cast<long long>(j);
        if (tag_ == GroupTag::cyclic) {
            detail::check(!reflection, "cyclic group has no reflections");
            return field_.omega_power(static_cast<long long>(irrep) * jj);
        }
        const std::string& label = irreps_[irrep].label;
        if (label == "A1") return Polynomial(1);
        if (label == "A2") return Polynomial(reflection ? -1 : 1);
        if (label == "B1") return Polynomial(j % 2 == 0 ? 1 : -1);
        if (label == "B2") {
            const int rot = (j % 2 == 0 ? 1 : -1);
            return Polynomial(reflection ? -rot : rot);
        }
        // two-dimensional E_k
        if (reflection) return Polynomial();
        const long long k = static_cast<long long>(irrep) - (n_ % 2 == 0 ? 3 : 1);
        detail::check(k >= 1, "unexpected irrep label");
        return field_.reduce(field_.omega_power(k * jj) + field_.omega_power(-k * jj));
    }

private:
    CharacterTable(GroupTag tag, size_t n) : tag_(tag), n_(n), field_(n) {}

    GroupTag tag_;
    size_t n_;
    CyclotomicField field_;
    std::vector<IrrepInfo> irreps_;
};

/// Identification of a concrete cyclic or dihedral permutation group with
/// the abstract presentation behind CharacterTable: element_form[t] gives
/// the (reflection?, power) form of elements()[t].
struct GroupStructure {
    GroupTag tag = GroupTag::cyclic;
    size_t n = 1;
    Permutation rotation;             // r
    Permutation reflection;           // s (identity for cyclic groups)
    std::vector<std::pair<bool, size_t>> element_form;
};

inline GroupStructure identify_structure(const SymmetryGroup& g) {
    detail::require_pre(g.tag() == GroupTag::cyclic || g.tag() == GroupTag::dihedral,
                        "character tables are available for cyclic and dihedral groups only "
                        "(group classified as " + g.tag_string() + ")");
    GroupStructure st;
    st.tag = g.tag();
    st.n = g.tag_n();
    const auto& els = g.elements();

    auto powers_of = [&](const Permutation& r) {
        std::vector<Permutation> pow;
        Permutation acc = Permutation::identity(g.degree());
        for (size_t j = 0; j < st.n; ++j) {
            pow.push_back(acc);
            acc = r * acc;
        }
        return pow;
    };
    auto find_form = [&](const std::vector<Permutation>& rot_pow) {
        // rotation forms first; reflections as s * r^j
        st.element_form.assign(els.size(), {false, 0});
        std::vector<char> matched(els.size(), 0);
        size_t hits = 0;
        for (size_t t = 0; t < els.size(); ++t) {
            for (size_t j = 0; j < rot_pow.size(); ++j)
                if (els[t] == rot_pow[j]) {
                    st.element_form[t] = {false, j};
                    matched[t] = 1;
                    ++hits;
                    break;
                }
            if (!matched[t] && st.tag == GroupTag::dihedral) {
                const Permutation rj = st.reflection * els[t];  // s^{-1} e = s e
                for (size_t j = 0; j < rot_pow.size(); ++j)
                    if (rj == rot_pow[j]) {
                        st.element_form[t] = {true, j};
                        matched[t] = 1;
                        ++hits;
                        break;
                    }
            }
        }
        return hits == els.size();
    };

    if (st.tag == GroupTag::cyclic) {
        for (const auto& r : els)
            if (static_cast<size_t>(r.order()) == st.n) {
                st.rotation = r;
                st.reflection = Permutation::identity(g.degree());
                detail::check(find_form(powers_of(r)), "cyclic group not covered by powers");
                return st;
            }
        detail::check(false, "cyclic group without full-order element");
    }
    for (const auto& r : els) {
        if (static_cast<size_t>(r.order()) != st.n) continue;
        const auto rot_pow = powers_of(r);
        for (const auto& s : els) {
            if (s.order() != 2) continue;
            bool in_rot = false;
            for (const auto& p : rot_pow)
                if (s == p) in_rot = true;
            if (in_rot) continue;
            if (!(s * r * s == r.inverse())) continue;
            st.rotation = r;
            st.reflection = s;
            if (find_form(rot_pow)) return st;
        }
    }
    detail::check(false, "dihedral group without (rotation, reflection) presentation");
    return st;  // unreachable
}

/// Multiplicity of each irreducible representation in the permutation
/// representation of g on its point set, computed exactly:
/// a_i = (1/|G|) sum_g conj(chi_i(g)) * #fixed(g), evaluated in the
/// cyclotomic field and asserted to come out a nonnegative integer.
inline std::vector<std::pair<IrrepInfo, size_t>> irrep_multiplicities(const SymmetryGroup& g) {
    const GroupStructure st = identify_structure(g);
    const CharacterTable table = st.tag == GroupTag::cyclic
                                     ? CharacterTable::cyclic(st.n)
                                     : CharacterTable::dihedral(st.n);
    const CyclotomicField& f = table.field();
    detail::check(table.group_order() == g.order(), "character table order mismatch");

    std::vector<std::pair<IrrepInfo, size_t>> out;
    size_t dim_sum = 0;
    for (size_t i = 0; i < table.irreps().size(); ++i) {
        Polynomial acc;
        for (size_t t = 0; t < g.elements().size(); ++t) {
            const auto [refl, j] = st.element_form[t];
            const Rational fixed(g.elements()[t].fixed_points());
            if (fixed == 0) continue;
            acc += f.conjugate(table.value(i, refl, j)) * Polynomial(fixed);
        }
        acc = f.reduce(acc);
        detail::check(f.is_rational(acc), "irrep multiplicity is not rational");
        const Rational a = f.to_rational(acc) / Rational(static_cast<long long>(g.order()));
        detail::check(denominator(a) == 1 && a >= 0,
                      "irrep multiplicity is not a nonnegative integer");
        const size_t count = numerator(a).convert_to<size_t>();
        dim_sum += count * static_cast<size_t>(table.irreps()[i].dim);
        out.emplace_back(table.irreps()[i], count);
    }
    detail::check(dim_sum == static_cast<size_t>(g.degree()),
                  "irrep dimensions do not add up to the point count");
    return out;
}

} // namespace latsym
