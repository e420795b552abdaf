// latsym command-line tool: latent-symmetry analysis of exact coupling
// matrices.  Subcommands operate on graph documents (see docs/formats.md)
// and report as aligned text, JSON, or LaTeX.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latsym/degeneracy.hpp"
#include "latsym/errors.hpp"
#include "latsym/fixtures.hpp"
#include "latsym/ges.hpp"
#include "latsym/graph_doc.hpp"
#include "latsym/multiplets.hpp"
#include "latsym/plan_doc.hpp"
#include "latsym/reduction.hpp"
#include "latsym/render.hpp"
#include "latsym/symmetry.hpp"
#include "latsym/walks.hpp"

namespace {

using nlohmann::json;

struct CmdOptions {
    std::string command;
    std::string input;
    std::string sites;
    std::string pair;
    std::string format = "text";
    std::string eval;
    std::string output;
    std::string plan_file;
    std::vector<std::string> attach;
    std::string onsite = "0";
    int max_size = 0;  // 0: up to the full complement
    double tol_ges = 1e-8;
    std::string fixture_name;
    std::string params;
    std::uint64_t seed = 1;
    bool list_fixtures = false;
};

struct Output {
    json data;
    int status = 0;  // nonzero: verification-style failure (exit 4)
};

// ---------------------------------------------------------------- helpers

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw latsym::input_error("bad " + what + " entry '" + tok + "' in '" + text + "'");
        }
    }
    latsym::detail::require_input(!out.empty(), what + " list is empty");
    return out;
}

latsym::SiteSet parse_sites(const std::string& text) {
    latsym::detail::require_input(!text.empty(), "--sites is required for this command");
    return latsym::SiteSet::from_one_based(parse_int_list(text, "site"));
}

std::pair<int, int> parse_pair(const std::string& text) {
    latsym::detail::require_input(!text.empty(), "--pair is required for this command");
    const auto v = parse_int_list(text, "pair");
    latsym::detail::require_input(v.size() == 2 && v[0] != v[1] && v[0] >= 1 && v[1] >= 1,
                                  "--pair needs two distinct 1-based sites");
    return {v[0] - 1, v[1] - 1};
}

std::vector<latsym::Rational> parse_rational_list(const std::string& text) {
    std::vector<latsym::Rational> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(latsym::parse_rational(tok));
    return out;
}

std::string join_one_based(const latsym::SiteSet& s) {
    std::string out;
    for (int v : s.to_one_based()) {
        if (!out.empty()) out += " ";
        out += std::to_string(v);
    }
    return out;
}

json group_json(const latsym::SymmetryGroup& g) {
    json j;
    j["order"] = g.order();
    j["tag"] = g.tag_string();
    j["degree"] = g.degree();
    json gens = json::array();
    for (const auto& p : g.generators()) gens.push_back(p.to_string());
    j["generators"] = gens;
    return j;
}

json input_json(const latsym::GraphDocument& doc, const std::string& path) {
    json j;
    j["path"] = path;
    j["digest"] = doc.digest();
    j["size"] = doc.size;
    j["hermitian"] = doc.hermitian;
    return j;
}

json matrix_strings(const latsym::Matrix<latsym::Rational>& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(latsym::format_rational(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json matrix_strings(const latsym::Matrix<latsym::RationalFunction>& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
        rows.push_back(row);
    }
    return rows;
}

json matrix_numbers(const latsym::Matrix<double>& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

class Stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// --------------------------------------------------------------- commands

Output run_reduce(const latsym::GraphDocument& doc, const CmdOptions& opt) {
    const auto sites = parse_sites(opt.sites);
    Stopwatch timer;
    const auto r = latsym::isospectral_reduce(doc.matrix, sites);
    r.assert_invariants();

    Output out;
    out.data["input"] = input_json(doc, opt.input);
    out.data["sites"] = sites.to_one_based();
    out.data["entries"] = matrix_strings(r.entries);
    out.data["poles"] = r.poles.to_string();
    out.data["pole_degree"] = r.poles.degree();

    std::ostringstream text;
    text << "input: " << opt.input << " (digest " << doc.digest() << ", " << doc.size
         << " sites)\n";
    text << "sites: " << join_one_based(sites) << "\n";
    text << "reduced matrix (entries in the spectral parameter x):\n"
         << latsym::text_matrix(r.entries);
    text << "poles: " << r.poles.to_string() << "\n";

    if (sites.size() <= 8) {
        const auto form = latsym::circulant_canonicalize(r);
        out.data["symmetric_circulant"] = form.is_symmetric_circulant;
        if (form.is_symmetric_circulant) {
            std::vector<int> reordered;
            for (int k = 0; k < sites.size(); ++k)
                reordered.push_back(sites[form.order[static_cast<size_t>(k)]] + 1);
            out.data["circulant_site_order"] = reordered;
            text << "symmetric circulant under site order:";
            for (int v : reordered) text << " " << v;
            text << "\n";
        } else {
            text << "symmetric circulant: no\n";
        }
    }

    if (!opt.eval.empty()) {
        const latsym::Rational x0 = latsym::parse_rational(opt.eval);
        const auto value = latsym::evaluate_reduction(r, x0);
        out.data["evaluated_at"] = latsym::format_rational(x0);
        out.data["evaluated"] = matrix_strings(value);
        text << "evaluated at x = " << latsym::format_rational(x0) << ":\n"
             << latsym::text_matrix(value);
    }

    out.data["elapsed_ms"] = timer.ms();
    out.data["render"]["text"] = text.str();
    out.data["render"]["latex"] = latsym::latex_matrix(r.entries) + "\n% poles: " +
                                  latsym::latex_polynomial(r.poles) + "\n";
    return out;
}

Output run_latent(const latsym::GraphDocument& doc, const CmdOptions& opt) {
    const auto sites = parse_sites(opt.sites);
    Stopwatch timer;
    const auto latent = latsym::latent_permutation_group(doc.matrix, sites);

    Output out;
    out.data["input"] = input_json(doc, opt.input);
    out.data["sites"] = sites.to_one_based();
    out.data["latent"] = group_json(latent);

    std::ostringstream text;
    text << "input: " << opt.input << " (digest " << doc.digest() << ", " << doc.size
         << " sites)\n";
    text << "sites: " << join_one_based(sites) << "\n";
    text << "latent group on the site set: " << latent.tag_string() << ", order "
         << latent.order() << "\n";
    for (const auto& p : latent.generators()) text << "  generator: " << p.to_string() << "\n";

    if (doc.size <= 12) {
        const auto global = latsym::global_automorphisms(doc.matrix);
        out.data["global"] = group_json(global);

        // restriction of the visible group to permutations fixing S setwise
        std::vector<latsym::Permutation> restricted;
        for (const auto& p : global.elements()) {
            bool preserves_set = true;
            for (int s : sites.indices())
                if (!sites.contains(p(s))) {
                    preserves_set = false;
                    break;
                }
            if (!preserves_set) continue;
            std::vector<int> image(static_cast<size_t>(sites.size()));
            for (int k = 0; k < sites.size(); ++k)
                image[static_cast<size_t>(k)] = sites.position_of(p(sites[k]));
            restricted.emplace_back(image);
        }
        const auto visible = latsym::SymmetryGroup::from_elements(restricted);
        out.data["visible_on_sites"] = group_json(visible);
        const bool hidden = latent.order() > visible.order();
        out.data["hidden_symmetry"] = hidden;

        text << "visible group (whole matrix): " << global.tag_string() << ", order "
             << global.order() << "\n";
        text << "visible action on the site set: order " << visible.order() << "\n";
        text << "hidden symmetry: " << (hidden ? "yes" : "no") << " (latent " << latent.order()
             << " vs visible " << visible.order() << ")\n";
    } else {
        out.data["global"] = nullptr;
        text << "visible group: skipped (more than 12 sites)\n";
    }

    out.data["elapsed_ms"] = timer.ms();
    out.data["render"]["text"] = text.str();
    return out;
}

Output run_degeneracy(const latsym::GraphDocument& doc, const CmdOptions& opt) {
    const auto sites = parse_sites(opt.sites);
    Stopwatch timer;
    const auto rep = latsym::analyze_degeneracy(doc.matrix, sites);

    Output out;
    out.data["input"] = input_json(doc, opt.input);
    out.data["sites"] = sites.to_one_based();
    out.data["group"] = group_json(rep.group);

    json decomposition = json::array();
    for (const auto& [irrep, count] : rep.decomposition)
        decomposition.push_back({{"irrep", irrep.label}, {"dim", irrep.dim}, {"count", count}});
    out.data["decomposition"] = decomposition;

    json predictions = json::array();
    for (const auto& p : rep.predictions)
        predictions.push_back({{"degeneracy", p.degeneracy}, {"count", p.count}});
    out.data["predictions"] = predictions;

    const bool natural_dihedral = rep.group.tag() == latsym::GroupTag::dihedral &&
                                  rep.group.tag_n() == static_cast<size_t>(rep.group.degree());
    if (natural_dihedral)
        out.data["pair_bound"] = rep.dihedral_pair_bound;
    if (rep.used_nonabelian_certificate) {
        out.data["certificate"]["constituents"] = latsym::format_rational(rep.constituent_count);
        out.data["certificate"]["orbits"] = rep.orbit_count;
    }

    json observed = json::array();
    for (const auto& [factor, mult] : rep.observed)
        observed.push_back(
            {{"factor", factor.to_string()}, {"multiplicity", mult}, {"degree", factor.degree()}});
    out.data["observed"] = observed;
    out.data["verified"] = json::array();
    for (bool v : rep.prediction_verified) out.data["verified"].push_back(v);
    out.data["all_verified"] = rep.all_verified;
    out.data["diagonalizable"] = rep.diagonalizable;

    std::ostringstream text;
    text << "input: " << opt.input << " (digest " << doc.digest() << ", " << doc.size
         << " sites)\n";
    text << "latent group on sites " << join_one_based(sites) << ": " << rep.group.tag_string()
         << ", order " << rep.group.order() << "\n";
    if (!rep.decomposition.empty()) {
        text << "decomposition:";
        for (const auto& [irrep, count] : rep.decomposition)
            text << " " << irrep.label << " x" << count;
        text << "\n";
    }
    if (rep.used_nonabelian_certificate)
        text << "nonabelian certificate: " << latsym::format_rational(rep.constituent_count)
             << " constituents vs " << rep.orbit_count << " orbit(s)\n";
    if (rep.predictions.empty()) {
        text << "predictions: none (the group forces no degeneracy)\n";
    } else {
        for (const auto& p : rep.predictions)
            text << "prediction: at least " << p.count << " eigenvalue group(s) of degeneracy "
                 << p.degeneracy << "\n";
    }
    if (natural_dihedral)
        text << "reflection-compatible pair bound: " << rep.dihedral_pair_bound << "\n";
    text << "observed multiplicity classes:\n";
    if (rep.observed.empty()) text << "  (all eigenvalues simple)\n";
    for (const auto& [factor, mult] : rep.observed)
        text << "  multiplicity " << mult << ": " << factor.to_string() << "\n";
    for (size_t i = 0; i < rep.prediction_verified.size(); ++i)
        text << (rep.prediction_verified[i] ? "[PASS] " : "[FAIL] ") << "prediction " << (i + 1)
             << "\n";
    text << "diagonalizable: " << (rep.diagonalizable ? "yes" : "no") << "\n";
    text << "overall: " << (rep.all_verified ? "PASS" : "FAIL") << "\n";

    out.status = rep.all_verified ? 0 : 4;
    out.data["elapsed_ms"] = timer.ms();
    out.data["render"]["text"] = text.str();
    return out;
}

Output run_ges(const latsym::GraphDocument& doc, const CmdOptions& opt) {
    const auto [u, v] = parse_pair(opt.pair);
    latsym::detail::require_input(u < doc.size && v < doc.size,
                                  "--pair out of range for a " + std::to_string(doc.size) +
                                      "-site system");
    latsym::detail::require_pre(doc.matrix.is_symmetric(),
                                "exchange symmetries need a symmetric matrix");
    Stopwatch timer;

    latsym::GesOptions ges_opt;
    ges_opt.tol_ges = opt.tol_ges;
    const auto ges = latsym::build_ges(doc.matrix, u, v, ges_opt);
    const auto exact = latsym::exact_exchange_involution(doc.matrix, u, v);

    double agreement = 0.0;
    for (int i = 0; i < doc.size; ++i)
        for (int j = 0; j < doc.size; ++j)
            agreement = std::max(agreement,
                                 std::abs(ges.q(i, j) - latsym::to_double(exact(i, j))));
    if (agreement > std::max(opt.tol_ges, 1e-8))
        throw latsym::numerical_error(
            "floating and exact exchange constructions disagree by " +
            latsym::format_double(agreement));

    Output out;
    out.data["input"] = input_json(doc, opt.input);
    out.data["pair"] = {u + 1, v + 1};
    out.data["exact"] = matrix_strings(exact);
    out.data["numeric"] = matrix_numbers(ges.q);
    out.data["residuals"] = {{"involution", ges.residual_involution},
                             {"symmetry", ges.residual_symmetry},
                             {"commutation", ges.residual_commutation},
                             {"swap", ges.residual_swap}};
    out.data["agreement"] = agreement;
    out.data["signed_permutation"] = ges.is_signed_permutation;
    out.data["tol_ges"] = opt.tol_ges;

    std::ostringstream text;
    text << "input: " << opt.input << " (digest " << doc.digest() << ", " << doc.size
         << " sites)\n";
    text << "exchange symmetry for pair (" << (u + 1) << ", " << (v + 1) << "):\n"
         << latsym::text_matrix(exact);
    text << "residuals: involution " << latsym::format_double(ges.residual_involution, 3)
         << ", symmetry " << latsym::format_double(ges.residual_symmetry, 3) << ", commutation "
         << latsym::format_double(ges.residual_commutation, 3) << ", swap "
         << latsym::format_double(ges.residual_swap, 3) << " (tolerance "
         << latsym::format_double(opt.tol_ges, 3) << ")\n";
    text << "floating/exact agreement: " << latsym::format_double(agreement, 3) << "\n";
    text << "signed permutation: " << (ges.is_signed_permutation ? "yes" : "no") << "\n";

    out.data["elapsed_ms"] = timer.ms();
    out.data["render"]["text"] = text.str();
    out.data["render"]["latex"] = latsym::latex_matrix(exact) + "\n";
    return out;
}

Output run_multiplets(const latsym::GraphDocument& doc, const CmdOptions& opt) {
    const auto sites = parse_sites(opt.sites);
    Stopwatch timer;
    const int comp = doc.size - sites.size();
    latsym::detail::require_input(comp > 0, "the site set covers the whole system");
    const int max_size = opt.max_size > 0 ? opt.max_size : comp;
    const auto found = latsym::find_multiplets(doc.matrix, sites, max_size);

    Output out;
    out.data["input"] = input_json(doc, opt.input);
    out.data["sites"] = sites.to_one_based();
    out.data["max_size"] = max_size;

    std::ostringstream text;
    text << "input: " << opt.input << " (digest " << doc.digest() << ", " << doc.size
         << " sites)\n";
    text << "multiplets for sites " << join_one_based(sites) << " (size up to " << max_size
         << "):\n";
    json list = json::array();
    for (const auto& m : found) {
        const auto check = latsym::check_multiplet(doc.matrix, sites, m.members);
        json entry;
        entry["members"] = m.members.to_one_based();
        entry["minimal"] = m.minimal;
        json constants = json::array();
        for (const auto& c : check.constants) constants.push_back(latsym::format_rational(c));
        entry["constants"] = constants;
        list.push_back(entry);

        text << "  {" << join_one_based(m.members) << "}" << (m.minimal ? " (minimal)" : "")
             << "  constants:";
        for (size_t k = 0; k < check.constants.size() && k < 6; ++k)
            text << " " << latsym::format_rational(check.constants[k]);
        if (check.constants.size() > 6) text << " ...";
        text << "\n";
    }
    if (found.empty()) text << "  none\n";
    out.data["multiplets"] = list;

    out.data["elapsed_ms"] = timer.ms();
    out.data["render"]["text"] = text.str();
    return out;
}

Output run_verify(const latsym::GraphDocument& doc, const CmdOptions& opt) {
    const auto sites = parse_sites(opt.sites);
    const latsym::Hamiltonian& h = doc.matrix;
    Stopwatch timer;

    Output out;
    out.data["input"] = input_json(doc, opt.input);
    out.data["sites"] = sites.to_one_based();
    json checks = json::array();
    bool all_pass = true;

    auto record = [&](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
        all_pass = all_pass && pass;
    };
    auto guarded_check = [&](const std::string& name, auto&& fn) {
        try {
            fn();
        } catch (const latsym::input_error&) {
            throw;  // bad usage, not a failed certificate
        } catch (const std::exception& e) {
            record(name, false, e.what());
        }
    };

    guarded_check("reduction-invariants", [&] {
        const auto r = latsym::isospectral_reduce(h, sites);
        r.assert_invariants();
        record("reduction-invariants", true,
               "entries proper, poles monic of degree " + std::to_string(r.poles.degree()));
    });
    guarded_check("independent-reduction-paths", [&] {
        const auto a = latsym::isospectral_reduce(h, sites);
        const auto b = latsym::reduce_via_charpoly(h, sites);
        const bool equal = a.entries == b.entries;
        record("independent-reduction-paths", equal,
               equal ? "adjugate and recursion paths agree exactly"
                     : "computation paths disagree");
    });
    guarded_check("determinant-identity", [&] {
        const bool ok = latsym::schur_determinant_identity_holds(h, sites);
        record("determinant-identity", ok,
               ok ? "det(H - x) = det(B - x) det(R - x) exactly" : "identity violated");
    });
    guarded_check("walk-decomposition", [&] {
        // First-return splitting: a length-k closed walk between sites of S
        // breaks at its first return into an S-avoiding prefix and a shorter
        // S-to-S walk, so (H^k)_SS = sum_j R_j (H^{k-j})_SS exactly, with
        // R_1 = H_SS and R_j = H_SC C^{j-2} H_CS over the complement C.
        const auto profile = latsym::walk_profile(h, sites);
        const auto part = latsym::detail::partition_blocks(h, sites);
        const int k_max = std::min(doc.size - 1, 6);
        const int d = sites.size();
        const bool has_complement = !part.sbar.empty();
        std::vector<latsym::Matrix<latsym::Rational>> returns;
        returns.push_back(latsym::Matrix<latsym::Rational>(d, d));  // unused j = 0
        returns.push_back(part.h_ss);
        auto inner = has_complement
                         ? latsym::Matrix<latsym::Rational>::identity(
                               static_cast<int>(part.sbar.size()))
                         : latsym::Matrix<latsym::Rational>();
        for (int j = 2; j <= k_max; ++j) {
            if (has_complement) {
                returns.push_back(part.h_ssb * inner * part.h_sbs);
                inner = inner * part.h_sbsb;
            } else {
                returns.push_back(latsym::Matrix<latsym::Rational>(d, d));
            }
        }
        bool ok = true;
        for (int k = 1; k <= k_max; ++k) {
            latsym::Matrix<latsym::Rational> sum(d, d);
            for (int j = 1; j <= k; ++j)
                sum = sum + returns[static_cast<size_t>(j)] *
                                profile.blocks[static_cast<size_t>(k - j)];
            ok = ok && sum == profile.blocks[static_cast<size_t>(k)];
        }
        record("walk-decomposition", ok,
               ok ? "first-return splitting of site-set walks holds to length " +
                        std::to_string(std::max(k_max, 1))
                  : "walk splitting identity violated");
    });
    guarded_check("latent-group", [&] {
        const auto g = latsym::latent_permutation_group(h, sites);
        const auto r = latsym::isospectral_reduce(h, sites);
        bool ok = true;
        for (const auto& p : g.generators())
            ok = ok && latsym::symbolic_commute(r, p.matrix());
        record("latent-group", ok,
               g.tag_string() + " of order " + std::to_string(g.order()) +
                   (ok ? ", generators commute with the reduced matrix identically"
                       : ", generator fails to commute"));
        out.data["latent"] = group_json(g);
    });
    guarded_check("degeneracy-predictions", [&] {
        const auto rep = latsym::analyze_degeneracy(h, sites);
        std::string detail;
        if (rep.predictions.empty())
            detail = "no degeneracy forced by " + rep.group.tag_string();
        else
            detail = std::to_string(rep.predictions.size()) + " prediction(s) against the " +
                     "exact multiplicity structure";
        record("degeneracy-predictions", rep.all_verified, detail);
    });
    guarded_check("exchange-symmetry", [&] {
        if (!h.is_symmetric()) {
            record("exchange-symmetry", true, "skipped: matrix not symmetric");
            return;
        }
        int u = -1, v = -1;
        const auto powers = latsym::full_powers(h);
        for (int a = 0; a < sites.size() && u < 0; ++a)
            for (int b = a + 1; b < sites.size() && u < 0; ++b)
                if (latsym::cospectral_sites(powers, sites[a], sites[b])) {
                    u = sites[a];
                    v = sites[b];
                }
        if (u < 0) {
            record("exchange-symmetry", true, "skipped: no cospectral pair in the site set");
            return;
        }
        latsym::exact_exchange_involution(h, u, v);  // throws if any identity fails
        latsym::GesOptions ges_opt;
        ges_opt.tol_ges = opt.tol_ges;
        const auto ges = latsym::build_ges(h, u, v, ges_opt);
        record("exchange-symmetry", true,
               "pair (" + std::to_string(u + 1) + ", " + std::to_string(v + 1) +
                   "): exact involution verified, numeric residuals within tolerance");
        (void)ges;
    });

    out.data["checks"] = checks;
    out.data["all_pass"] = all_pass;
    out.status = all_pass ? 0 : 4;

    std::ostringstream text;
    text << "input: " << opt.input << " (digest " << doc.digest() << ", " << doc.size
         << " sites)\n";
    for (const auto& c : checks)
        text << (c["pass"].get<bool>() ? "[PASS] " : "[FAIL] ") << c["name"].get<std::string>()
             << " - " << c["detail"].get<std::string>() << "\n";
    text << "overall: " << (all_pass ? "PASS" : "FAIL") << "\n";

    out.data["elapsed_ms"] = timer.ms();
    out.data["render"]["text"] = text.str();
    return out;
}

latsym::ExtensionPlan plan_from_options(const CmdOptions& opt) {
    if (!opt.plan_file.empty()) {
        latsym::detail::require_input(opt.attach.empty(),
                                      "--plan and --attach cannot be combined");
        return latsym::load_extension_plan(opt.plan_file);
    }
    latsym::detail::require_input(!opt.attach.empty(),
                                  "extend needs --plan FILE or at least one --attach SITES:VALUE");
    latsym::ExtensionPlan plan;
    plan.onsite = latsym::parse_rational(opt.onsite);
    for (const auto& spec : opt.attach) {
        const auto colon = spec.find(':');
        latsym::detail::require_input(colon != std::string::npos,
                                      "--attach expects SITES:VALUE, got '" + spec + "'");
        latsym::ExtensionTerm term;
        term.members =
            latsym::SiteSet::from_one_based(parse_int_list(spec.substr(0, colon), "site"));
        term.strength = latsym::parse_rational(spec.substr(colon + 1));
        plan.terms.push_back(std::move(term));
    }
    return plan;
}

Output run_extend(const latsym::GraphDocument& doc, const CmdOptions& opt) {
    const auto sites = parse_sites(opt.sites);
    const auto plan = plan_from_options(opt);
    Stopwatch timer;

    const auto extended = latsym::extend_with_site(doc.matrix, sites, plan);
    const auto check = latsym::verify_extension(doc.matrix, extended, sites);
    const auto extended_doc =
        latsym::GraphDocument::from_matrix(extended, extended.is_symmetric());

    Output out;
    out.data["input"] = input_json(doc, opt.input);
    out.data["sites"] = sites.to_one_based();
    out.data["plan"] = latsym::serialize_extension_plan(plan);
    out.data["new_site"] = extended.rows();
    out.data["shift"] = check.shift.to_string();
    out.data["uniform_shift"] = check.uniform_shift;
    out.data["group_preserved"] = check.group_preserved;
    out.data["document"] = extended_doc.serialize();
    out.data["digest"] = extended_doc.digest();

    std::ostringstream report;
    report << "# extended by site " << extended.rows() << "; reduced-matrix shift: "
           << check.shift.to_string() << "\n";
    report << "# uniform shift: " << (check.uniform_shift ? "yes" : "no")
           << "; latent group preserved: " << (check.group_preserved ? "yes" : "no") << "\n";

    if (!opt.output.empty()) {
        extended_doc.save(opt.output);
        out.data["render"]["text"] = "wrote " + opt.output + "\n" + report.str();
    } else {
        out.data["render"]["text"] = extended_doc.serialize() + report.str();
    }
    out.data["elapsed_ms"] = timer.ms();
    return out;
}

Output run_fixture(const CmdOptions& opt) {
    Output out;
    if (opt.list_fixtures) {
        std::string text;
        for (const auto& name : latsym::fixture_names()) text += name + "\n";
        out.data["fixtures"] = latsym::fixture_names();
        out.data["render"]["text"] = text;
        return out;
    }
    latsym::detail::require_input(!opt.fixture_name.empty(),
                                  "fixture needs a name (or --list); available: two-triangle, "
                                  "ring, path, decorated-ring, latent-d3");
    const auto fix =
        latsym::build_fixture(opt.fixture_name, parse_rational_list(opt.params), opt.seed);
    const auto doc = latsym::GraphDocument::from_matrix(fix.matrix);

    out.data["name"] = fix.name;
    out.data["description"] = fix.description;
    out.data["sites"] = fix.sites.to_one_based();
    out.data["size"] = fix.matrix.rows();
    out.data["digest"] = doc.digest();
    out.data["document"] = doc.serialize();

    std::ostringstream text;
    text << "# fixture: " << fix.name << "\n";
    text << "# " << fix.description << "\n";
    text << "# suggested sites: " << join_one_based(fix.sites) << "\n";
    text << doc.serialize();

    if (!opt.output.empty()) {
        std::ofstream file(opt.output);
        latsym::detail::require_input(static_cast<bool>(file), "cannot write " + opt.output);
        file << text.str();
        out.data["render"]["text"] =
            "wrote " + opt.output + " (digest " + doc.digest() + ")\n";
    } else {
        out.data["render"]["text"] = text.str();
    }
    return out;
}

// ------------------------------------------------------------- dispatch

std::string emit_string(Output out, const std::string& format) {
    if (format == "data") {
        out.data.erase("render");
        return out.data.dump(2) + "\n";
    }
    if (format == "latex") {
        latsym::detail::require_input(out.data.contains("render") &&
                                          out.data["render"].contains("latex"),
                                      "latex output is not available for this command");
        return out.data["render"]["latex"].get<std::string>();
    }
    latsym::detail::require_input(format == "text",
                                  "unknown format '" + format + "' (text, data, latex)");
    return out.data["render"]["text"].get<std::string>();
}

int status_of_exception() {
    try {
        throw;
    } catch (const latsym::input_error&) {
        return 2;
    } catch (const latsym::precondition_error&) {
        return 3;
    } catch (const latsym::numerical_error&) {
        return 4;
    } catch (const std::exception&) {
        return 1;
    }
}

using Handler = Output (*)(const latsym::GraphDocument&, const CmdOptions&);

Handler handler_for(const std::string& command) {
    if (command == "reduce") return run_reduce;
    if (command == "latent") return run_latent;
    if (command == "degeneracy") return run_degeneracy;
    if (command == "ges") return run_ges;
    if (command == "multiplets") return run_multiplets;
    if (command == "verify") return run_verify;
    return nullptr;
}

int batch_threads() {
    const char* env = std::getenv("LATSYM_THREADS");
    if (env == nullptr || *env == '\0') return 1;
    try {
        size_t used = 0;
        const int n = std::stoi(env, &used);
        if (used != std::string(env).size() || n < 1 || n > 64)
            throw std::invalid_argument(env);
        return n;
    } catch (const std::exception&) {
        throw latsym::input_error("LATSYM_THREADS must be an integer between 1 and 64");
    }
}

int run_batch(Handler handler, const CmdOptions& base) {
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(base.input))
        if (entry.is_regular_file() && entry.path().extension() == ".graph")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    latsym::detail::require_input(!files.empty(), "no .graph files in " + base.input);

    struct Slot {
        std::string text;
        int status = 0;
    };
    std::vector<Slot> slots(files.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1)) {
            CmdOptions opt = base;
            opt.input = files[i];
            try {
                const auto doc = latsym::GraphDocument::load(files[i]);
                Output out = handler(doc, opt);
                slots[i].status = out.status;
                slots[i].text = emit_string(std::move(out), base.format);
            } catch (...) {
                slots[i].status = status_of_exception();
                try {
                    throw;
                } catch (const std::exception& e) {
                    slots[i].text = std::string("error: ") + e.what() + "\n";
                }
            }
        }
    };

    const int thread_count =
        std::min<int>(batch_threads(), static_cast<int>(files.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < thread_count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int status = 0;
    for (size_t i = 0; i < files.size(); ++i) {
        std::cout << "== " << files[i] << " ==\n" << slots[i].text;
        status = std::max(status, slots[i].status);
    }
    return status;
}

int dispatch(const CmdOptions& opt) {
    if (opt.command == "fixture") {
        std::cout << emit_string(run_fixture(opt), opt.format);
        return 0;
    }

    latsym::detail::require_input(!opt.input.empty(), "--input is required");
    if (opt.command == "extend") {
        latsym::detail::require_input(!std::filesystem::is_directory(opt.input),
                                      "extend operates on a single file");
        const auto doc = latsym::GraphDocument::load(opt.input);
        const Output out = run_extend(doc, opt);
        std::cout << emit_string(out, opt.format);
        return out.status;
    }

    Handler handler = handler_for(opt.command);
    latsym::detail::check(handler != nullptr, "unregistered command " + opt.command);
    if (std::filesystem::is_directory(opt.input)) return run_batch(handler, opt);

    const auto doc = latsym::GraphDocument::load(opt.input);
    Output out = handler(doc, opt);
    const int status = out.status;
    std::cout << emit_string(std::move(out), opt.format);
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CmdOptions opt;
    CLI::App app{"latent-symmetry analysis of exact coupling matrices"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd, bool with_sites) {
        cmd->add_option("--input", opt.input, "graph document, or a directory of .graph files");
        if (with_sites)
            cmd->add_option("--sites", opt.sites, "1-based site list, e.g. 1,2,3");
        cmd->add_option("--format", opt.format, "output format: text, data, or latex")
            ->check(CLI::IsMember({"text", "data", "latex"}));
    };

    auto* reduce = app.add_subcommand("reduce", "eliminate the complement of a site set exactly");
    add_common(reduce, true);
    reduce->add_option("--eval", opt.eval, "also evaluate the reduced matrix at this value");

    auto* latent = app.add_subcommand("latent", "latent and visible symmetry groups of a site set");
    add_common(latent, true);

    auto* degeneracy =
        app.add_subcommand("degeneracy", "predict and verify eigenvalue degeneracies");
    add_common(degeneracy, true);

    auto* ges = app.add_subcommand("ges", "exchange symmetry for a cospectral site pair");
    add_common(ges, false);
    ges->add_option("--pair", opt.pair, "1-based cospectral pair, e.g. 1,2");
    ges->add_option("--tol-ges", opt.tol_ges, "residual tolerance for the exchange matrix");

    auto* multiplets =
        app.add_subcommand("multiplets", "complement subsets coupling uniformly into a site set");
    add_common(multiplets, true);
    multiplets->add_option("--max-size", opt.max_size, "largest subset size to search");

    auto* extend = app.add_subcommand("extend", "attach a new site via multiplets");
    add_common(extend, true);
    extend->add_option("--plan", opt.plan_file, "extension plan file");
    extend->add_option("--attach", opt.attach,
                       "uniform attachment SITES:VALUE (repeatable), e.g. 4,5,6:1/2");
    extend->add_option("--onsite", opt.onsite, "onsite value of the new site");
    extend->add_option("--output", opt.output, "write the extended document here");

    auto* verify = app.add_subcommand("verify", "run all exact certificates for a site set");
    add_common(verify, true);
    verify->add_option("--tol-ges", opt.tol_ges, "residual tolerance for exchange matrices");

    auto* fixture = app.add_subcommand("fixture", "emit a named example system");
    fixture->add_option("name", opt.fixture_name, "fixture name");
    fixture->add_option("--params", opt.params, "comma-separated fixture parameters");
    fixture->add_option("--seed", opt.seed, "randomness seed for generated fixtures");
    fixture->add_option("--output", opt.output, "write the document here");
    fixture->add_option("--format", opt.format, "output format: text or data")
        ->check(CLI::IsMember({"text", "data"}));
    fixture->add_flag("--list", opt.list_fixtures, "list available fixtures");

    for (auto* cmd : {reduce, latent, degeneracy, ges, multiplets, extend, verify, fixture})
        cmd->callback([&opt, cmd] { opt.command = cmd->get_name(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return dispatch(opt);
    } catch (const std::exception& e) {
        const int status = status_of_exception();
        std::cerr << "latsym: " << e.what() << "\n";
        return status;
    }
}
