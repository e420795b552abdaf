#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "latsym/errors.hpp"
#include "latsym/matrix.hpp"
#include "latsym/rational.hpp"
#include "latsym/sites.hpp"

namespace latsym {

/// Line-oriented text description of a coupling matrix.
///
///   # comment                 (also allowed after any directive)
///   size N                    (required, before any other directive)
///   hermitian true|false      (optional, default true; before any entry)
///   onsite I VALUE            (diagonal entry, 1-based site index)
///   I J VALUE                 (off-diagonal entry; with hermitian true the
///                              mirrored entry is set as well)
///   label I NAME              (optional display name for a site)
///
/// Values are exact rationals, written as integers or P/Q.  Every
/// coupling and onsite entry may be assigned at most once.
struct GraphDocument {
    int size = 0;
    bool hermitian = true;
    Hamiltonian matrix;
    std::vector<std::string> labels;

    static GraphDocument parse(std::istream& in);
    static GraphDocument parse_text(const std::string& text) {
        std::istringstream in(text);
        return parse(in);
    }
    static GraphDocument load(const std::string& path) {
        std::ifstream in(path);
        detail::require_input(static_cast<bool>(in), "cannot open " + path);
        return parse(in);
    }

    static GraphDocument from_matrix(const Hamiltonian& m, bool hermitian = true) {
        detail::require_input(m.is_square(), "coupling matrix must be square");
        if (hermitian)
            detail::require_input(m.is_symmetric(),
                                  "matrix is not symmetric but was declared hermitian");
        GraphDocument doc;
        doc.size = m.rows();
        doc.hermitian = hermitian;
        doc.matrix = m;
        doc.labels.assign(static_cast<size_t>(m.rows()), "");
        return doc;
    }

    std::string serialize() const;
    void save(const std::string& path) const {
        std::ofstream out(path);
        detail::require_input(static_cast<bool>(out), "cannot write " + path);
        out << serialize();
    }

    /// FNV-1a 64-bit digest of the canonical serialization, as 16 hex chars.
    std::string digest() const {
        std::uint64_t hash = 14695981039346656037ULL;
        for (unsigned char c : serialize()) {
            hash ^= c;
            hash *= 1099511628211ULL;
        }
        static const char* hex = "0123456789abcdef";
        std::string out(16, '0');
        for (int i = 15; i >= 0; --i) {
            out[static_cast<size_t>(i)] = hex[hash & 0xF];
            hash >>= 4;
        }
        return out;
    }

    friend bool operator==(const GraphDocument& a, const GraphDocument& b) {
        return a.size == b.size && a.hermitian == b.hermitian && a.matrix == b.matrix &&
               a.labels == b.labels;
    }
};

inline GraphDocument GraphDocument::parse(std::istream& in) {
    GraphDocument doc;
    bool have_size = false;
    bool have_hermitian = false;
    bool have_entries = false;
    std::set<std::pair<int, int>> assigned;
    std::set<int> onsite_assigned;
    std::string line;
    int line_no = 0;

    auto fail = [&](const std::string& what) -> void {
        throw input_error("line " + std::to_string(line_no) + ": " + what);
    };
    auto site_index = [&](const std::string& tok) {
        int v = 0;
        try {
            size_t used = 0;
            v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            fail("expected a site index, got '" + tok + "'");
        }
        if (v < 1 || v > doc.size)
            fail("site index " + tok + " out of range 1.." + std::to_string(doc.size));
        return v - 1;
    };
    auto value_of = [&](const std::string& tok) {
        try {
            return parse_rational(tok);
        } catch (const error& e) {
            fail(std::string("bad value '") + tok + "': " + e.what());
        }
        return Rational(0);
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;

        if (tok[0] == "size") {
            if (have_size) fail("size declared twice");
            if (tok.size() != 2) fail("usage: size N");
            int n = 0;
            try {
                size_t used = 0;
                n = std::stoi(tok[1], &used);
                if (used != tok[1].size()) throw std::invalid_argument(tok[1]);
            } catch (const std::exception&) {
                fail("bad size '" + tok[1] + "'");
            }
            if (n < 1) fail("size must be positive");
            doc.size = n;
            doc.matrix = Hamiltonian(n, n);
            doc.labels.assign(static_cast<size_t>(n), "");
            have_size = true;
            continue;
        }
        if (!have_size) fail("the first directive must be 'size N'");

        if (tok[0] == "hermitian") {
            if (have_hermitian) fail("hermitian declared twice");
            if (have_entries) fail("hermitian must come before any entry");
            if (tok.size() != 2 || (tok[1] != "true" && tok[1] != "false"))
                fail("usage: hermitian true|false");
            doc.hermitian = tok[1] == "true";
            have_hermitian = true;
            continue;
        }
        if (tok[0] == "onsite") {
            if (tok.size() != 3) fail("usage: onsite I VALUE");
            const int i = site_index(tok[1]);
            if (!onsite_assigned.insert(i).second)
                fail("duplicate onsite entry for site " + tok[1]);
            doc.matrix(i, i) = value_of(tok[2]);
            have_entries = true;
            continue;
        }
        if (tok[0] == "label") {
            if (tok.size() != 3) fail("usage: label I NAME");
            const int i = site_index(tok[1]);
            if (!doc.labels[static_cast<size_t>(i)].empty())
                fail("duplicate label for site " + tok[1]);
            doc.labels[static_cast<size_t>(i)] = tok[2];
            continue;
        }

        if (tok.size() != 3) fail("expected 'I J VALUE', got '" + tok[0] + " ...'");
        const int i = site_index(tok[0]);
        const int j = site_index(tok[1]);
        if (i == j) fail("diagonal entries use the onsite directive");
        std::pair<int, int> key{i, j};
        if (doc.hermitian && i > j) std::swap(key.first, key.second);
        if (!assigned.insert(key).second)
            fail("duplicate coupling " + tok[0] + " " + tok[1]);
        const Rational v = value_of(tok[2]);
        doc.matrix(i, j) = v;
        if (doc.hermitian) doc.matrix(j, i) = v;
        have_entries = true;
    }
    detail::require_input(have_size, "document has no size directive");
    return doc;
}

inline std::string GraphDocument::serialize() const {
    std::ostringstream out;
    out << "size " << size << "\n";
    out << "hermitian " << (hermitian ? "true" : "false") << "\n";
    for (int i = 0; i < size; ++i)
        if (matrix(i, i) != 0)
            out << "onsite " << (i + 1) << " " << format_rational(matrix(i, i)) << "\n";
    for (int i = 0; i < size; ++i) {
        const int j_start = hermitian ? i + 1 : 0;
        for (int j = j_start; j < size; ++j) {
            if (i == j || matrix(i, j) == 0) continue;
            out << (i + 1) << " " << (j + 1) << " " << format_rational(matrix(i, j)) << "\n";
        }
    }
    for (int i = 0; i < size; ++i)
        if (!labels[static_cast<size_t>(i)].empty())
            out << "label " << (i + 1) << " " << labels[static_cast<size_t>(i)] << "\n";
    return out.str();
}

} // namespace latsym
