#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "latsym/errors.hpp"
#include "latsym/multiplets.hpp"
#include "latsym/rational.hpp"
#include "latsym/sites.hpp"

namespace latsym {

/// Text form of an extension plan, one directive per line:
///
///   onsite VALUE              (at most once; defaults to 0)
///   couple VALUE : SITES...   (one uniform attachment per line,
///                              1-based site indices)
///   # comment
inline ExtensionPlan parse_extension_plan(std::istream& in) {
    ExtensionPlan plan;
    bool have_onsite = false;
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& what) -> void {
        throw input_error("plan line " + std::to_string(line_no) + ": " + what);
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;

        if (head == "onsite") {
            if (have_onsite) fail("onsite declared twice");
            std::string value, extra;
            if (!(ls >> value) || (ls >> extra)) fail("usage: onsite VALUE");
            try {
                plan.onsite = parse_rational(value);
            } catch (const error& e) {
                fail(e.what());
            }
            have_onsite = true;
            continue;
        }
        if (head == "couple") {
            std::string value, colon;
            if (!(ls >> value >> colon) || colon != ":")
                fail("usage: couple VALUE : SITES...");
            ExtensionTerm term;
            try {
                term.strength = parse_rational(value);
            } catch (const error& e) {
                fail(e.what());
            }
            std::vector<int> sites;
            for (std::string tok; ls >> tok;) {
                try {
                    size_t used = 0;
                    const int s = std::stoi(tok, &used);
                    if (used != tok.size()) throw std::invalid_argument(tok);
                    sites.push_back(s);
                } catch (const std::exception&) {
                    fail("bad site index '" + tok + "'");
                }
            }
            if (sites.empty()) fail("couple line lists no sites");
            try {
                term.members = SiteSet::from_one_based(sites);
            } catch (const error& e) {
                fail(e.what());
            }
            plan.terms.push_back(std::move(term));
            continue;
        }
        fail("unknown directive '" + head + "'");
    }
    detail::require_input(!plan.terms.empty(), "plan has no couple directives");
    return plan;
}

inline ExtensionPlan parse_extension_plan_text(const std::string& text) {
    std::istringstream in(text);
    return parse_extension_plan(in);
}

inline ExtensionPlan load_extension_plan(const std::string& path) {
    std::ifstream in(path);
    detail::require_input(static_cast<bool>(in), "cannot open " + path);
    return parse_extension_plan(in);
}

inline std::string serialize_extension_plan(const ExtensionPlan& plan) {
    std::ostringstream out;
    if (plan.onsite != 0) out << "onsite " << format_rational(plan.onsite) << "\n";
    for (const auto& term : plan.terms) {
        out << "couple " << format_rational(term.strength) << " :";
        for (int s : term.members.to_one_based()) out << " " << s;
        out << "\n";
    }
    return out.str();
}

} // namespace latsym
