// Command-line front end: validate, build, axioms, cover, isominimal, core,
// compare, chains, rule-test, export-dot.
//
// Exit codes: 0 success or positive answer, 1 negative answer, 2 bad usage or input.

#include "patternforge/core.hpp"
#include "patternforge/dot.hpp"
#include "patternforge/error.hpp"
#include "patternforge/io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace pf;

struct Globals {
    std::string format = "human";
    bool sugar = false;
    std::optional<long long> seed;  // accepted for scripting symmetry; nothing is random
    std::string out;

    bool json() const { return format == "json"; }
    std::string show(const Ordinal& x) const { return x.to_string(sugar); }
};

std::vector<OrdinalPair> to_candidate_pairs(const Hierarchy& H, int k) {
    std::vector<OrdinalPair> out;
    const auto& c = H.carrier();
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            if (H.relation(k)(i, j)) {
                out.emplace_back(c[i], c[j]);
            }
        }
    }
    return out;
}

void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
    } else {
        write_file(g.out, text);
    }
}

std::string show_pairs(const Globals& g, const std::vector<OrdinalPair>& pairs) {
    std::string s;
    for (const auto& [a, b] : pairs) {
        s += (s.empty() ? "" : ", ") + g.show(a) + " < " + g.show(b);
    }
    return s.empty() ? "none" : s;
}

std::string show_set(const Globals& g, std::span<const Ordinal> xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (i ? ", " : "") + g.show(xs[i]);
    }
    return s + "}";
}

std::string show_assignment(const Globals& g, const Pattern& P, const Covering& h) {
    std::string s;
    for (std::size_t i = 0; i < h.image.size(); ++i) {
        s += (i ? ", " : "") + g.show(P.universe()[i]) + " -> " + g.show(h.image[i]);
    }
    return s;
}

int cmd_validate(const Globals& g, const std::string& file, const std::string& host) {
    const auto s = read_candidate(read_file(file));
    const auto violations = validate_pattern(s);
    std::optional<PatternVerdict> verdict;
    if (violations.empty() && !host.empty()) {
        verdict = is_pattern(s, read_hierarchy(read_file(host)));
    }
    const bool ok = violations.empty() && (!verdict || verdict->ok());
    if (g.json()) {
        Json j{{"valid", violations.empty()}, {"violations", Json::array()}};
        for (const auto& v : violations) {
            j["violations"].push_back(to_json(v));
        }
        if (verdict) {
            j["covered"] = verdict->ok();
            j["reason"] = verdict->reason;
        }
        std::cout << j.dump(2) << "\n";
    } else if (!violations.empty()) {
        for (const auto& v : violations) {
            std::cout << v.to_string() << "\n";
        }
    } else {
        std::cout << (verdict ? verdict->reason : "ok") << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_build(const Globals& g, const std::string& carrier_file, const std::string& top_text, std::size_t width,
              bool close) {
    const auto elems = read_carrier(read_file(carrier_file));
    const ClosedSet carrier = close ? ClosedSet::closure(elems) : ClosedSet::from_elements(elems);
    const Ordinal top = top_text.empty() ? default_top(carrier) : Ordinal::parse(top_text);
    BuildOptions options;
    options.width = width;
    const Hierarchy H = build_hierarchy(carrier, top, options);
    if (!g.out.empty()) {
        write_file(g.out, write_hierarchy(H));
    }
    if (g.json()) {
        std::cout << to_json(H).dump(2) << "\n";
    } else {
        std::cout << "carrier: " << H.size() << " elements, top " << g.show(H.top()) << "\n"
                  << "rounds: " << H.log().round_count() << "\n"
                  << "le1: " << show_pairs(g, to_candidate_pairs(H, 1)) << "\n"
                  << "le2: " << show_pairs(g, to_candidate_pairs(H, 2)) << "\n"
                  << "hash: " << hierarchy_hash(H) << "\n";
    }
    return 0;
}

int cmd_axioms(const Globals& g, const std::string& file, std::size_t window) {
    const Hierarchy H = read_hierarchy(read_file(file));
    const AxiomReport r = check_hierarchy_axioms(H, window);
    if (g.json()) {
        Json j{{"exact_ok", r.exact_ok()},
               {"partial_orders", Json::array()},
               {"respect", Json::array()},
               {"top_ok", r.top_ok},
               {"top_detail", r.top_detail},
               {"window", r.window},
               {"inf_pairs_checked", r.inf_pairs_checked},
               {"inf_failures", Json::array()},
               {"limit_continuity_failures", Json::array()}};
        for (const auto& v : r.partial_orders) {
            j["partial_orders"].push_back(to_json(v));
        }
        for (const auto& v : r.respect) {
            j["respect"].push_back(to_json(v));
        }
        for (const auto& f : r.inf_failures) {
            j["inf_failures"].push_back({{"k", f.k}, {"a", f.a.to_string()}, {"b", f.b.to_string()}});
        }
        for (const auto& [a, b] : r.limit_continuity_failures) {
            j["limit_continuity_failures"].push_back(Json::array({a.to_string(), b.to_string()}));
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << r.to_text();
    }
    return r.exact_ok() ? 0 : 1;
}

int cmd_cover(const Globals& g, const std::string& pattern_file, const std::string& host, std::size_t limit) {
    const Pattern P = read_pattern(read_file(pattern_file));
    const Hierarchy H = read_hierarchy(read_file(host));
    CoveringConstraints c;
    c.limit = limit;
    const auto covs = search_coverings(P, H, c);
    if (!g.out.empty() && !covs.empty()) {
        write_file(g.out, write_covering(P, covs.front()));
    }
    if (g.json()) {
        Json j = Json::array();
        for (const auto& h : covs) {
            j.push_back(to_json(P, h)["assignment"]);
        }
        std::cout << Json{{"count", covs.size()}, {"coverings", j}}.dump(2) << "\n";
    } else {
        std::cout << covs.size() << " covering(s)\n";
        for (const auto& h : covs) {
            std::cout << "  " << show_assignment(g, P, h) << "\n";
        }
    }
    return covs.empty() ? 1 : 0;
}

int cmd_isominimal(const Globals& g, const std::string& pattern_file, const std::string& host) {
    const Pattern P = read_pattern(read_file(pattern_file));
    const Hierarchy H = read_hierarchy(read_file(host));
    const auto r = isominimal(P, H);
    if (!r) {
        std::cout << (g.json() ? "{\n  \"covered\": false\n}\n" : "not covered\n");
        return 1;
    }
    if (!g.out.empty()) {
        write_file(g.out, write_pattern(r->realization));
    }
    if (g.json()) {
        Json j{{"covered", true},
               {"realization", to_json(r->realization)},
               {"covering", to_json(P, r->covering)["assignment"]},
               {"covers_enumerated", r->covers_enumerated},
               {"unique_minimum", r->unique_minimum},
               {"below_every_cover", r->below_every_cover},
               {"isomorphic", r->isomorphic}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "realization: " << show_set(g, r->realization.universe().elements()) << "\n"
                  << "covering: " << show_assignment(g, P, r->covering) << "\n"
                  << "covers enumerated: " << r->covers_enumerated << "\n"
                  << "unique minimum: " << (r->unique_minimum ? "yes" : "no") << "\n"
                  << "below every cover: " << (r->below_every_cover ? "yes" : "no") << "\n"
                  << "isomorphic: " << (r->isomorphic ? "yes" : "no") << "\n";
    }
    return 0;
}

int cmd_core(const Globals& g, const std::string& host, std::size_t bound) {
    const Hierarchy H = read_hierarchy(read_file(host));
    const Core C = compute_core(H, bound);
    if (!g.out.empty()) {
        write_file(g.out, write_core(C));
    }
    if (g.json()) {
        std::cout << to_json(C).dump(2) << "\n";
    } else {
        std::cout << "size bound: " << C.size_bound << "\n"
                  << "members (" << C.members.size() << "): " << show_set(g, C.members) << "\n"
                  << "witnesses: " << C.witnesses.size() << "\n";
    }
    return 0;
}

int cmd_compare(const Globals& g, const std::string& f1, const std::string& f2) {
    const Core C1 = read_core(read_file(f1));
    const Core C2 = read_core(read_file(f2));
    const auto cmp = compare_cores(C1, C2);
    Json j;
    std::string text;
    int code = 0;
    if (const auto* e = std::get_if<InitialSegmentEmbedding>(&cmp)) {
        Json map = Json::array();
        for (const auto& [a, b] : e->map) {
            map.push_back(Json::array({a.to_string(), b.to_string()}));
            text += "  " + g.show(a) + " -> " + g.show(b) + "\n";
        }
        j = {{"embedding", true}, {"initial_segment_flag", e->initial_segment_flag}, {"map", map}};
        text = std::string("embedding found; initial segment: ") + (e->initial_segment_flag ? "yes" : "no") + "\n" +
               text;
    } else {
        const auto& m = std::get<CoreMismatch>(cmp);
        j = {{"embedding", false}, {"position", m.position}, {"reason", m.reason}};
        j["member1"] = m.member1 ? Json(m.member1->to_string()) : Json(nullptr);
        j["member2"] = m.member2 ? Json(m.member2->to_string()) : Json(nullptr);
        j["witness1"] = m.witness1 ? to_json(*m.witness1) : Json(nullptr);
        j["witness2"] = m.witness2 ? to_json(*m.witness2) : Json(nullptr);
        text = "no embedding: mismatch at member " + std::to_string(m.position) + ": " + m.reason + "\n";
        code = 1;
    }
    if (g.json()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text << "--- machine-readable ---\n" << j.dump() << "\n";
    }
    return code;
}

int cmd_chains(const Globals& g, const std::string& host) {
    const Hierarchy H = read_hierarchy(read_file(host));
    const auto chain = longest_chain2(H);
    if (g.json()) {
        Json j = Json::array();
        for (const auto& x : chain) {
            j.push_back(x.to_string());
        }
        std::cout << Json{{"length", chain.size()}, {"chain", j}}.dump(2) << "\n";
    } else if (chain.empty()) {
        std::cout << "no strict le2 pair\n";
    } else {
        std::string s;
        for (const auto& x : chain) {
            s += (s.empty() ? "" : " <2 ") + g.show(x);
        }
        std::cout << s << "\n";
    }
    return chain.empty() ? 1 : 0;
}

int cmd_rule_test(const Globals& g, const std::string& rule_file, const std::string& host, std::size_t max_coverings,
                  std::size_t max_phis) {
    const RuleInstance r = read_rule(read_file(rule_file));
    const Hierarchy H = read_hierarchy(read_file(host));
    const CofinalVerdict v = test_cofinal_validity(r.premise, r.conclusion, H, {max_coverings, max_phis});
    const Json j = to_json(v, r.premise);
    if (!g.out.empty()) {
        write_file(g.out, format_document(j));
    }
    if (g.json()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (v.valid ? "valid" : "invalid") << " (" << v.coverings_checked << " covering(s), "
                  << v.phis_checked << " regressive map(s)" << (v.budget_exhausted ? ", budget exhausted" : "")
                  << ")\n";
        if (v.counterexample) {
            std::cout << "counterexample: " << show_assignment(g, r.premise, *v.counterexample) << "\n";
        }
    }
    return v.valid ? 0 : 1;
}

int cmd_export_dot(const Globals& g, const std::string& file) {
    const std::string text = read_file(file);
    const Json j = parse_document(text);
    if (j.contains("carrier")) {
        emit(g, export_dot(read_hierarchy(text)));
    } else if (j.contains("members")) {
        emit(g, export_dot(read_core(text)));
    } else if (j.contains("universe")) {
        emit(g, export_dot(read_pattern(text)));
    } else {
        throw ParseError("not a pattern, hierarchy or core file");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"patternforge: finite patterns of resemblance of order 2"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"human", "json"}));
    app.add_flag("--sugar", g.sugar, "Abbreviate ordinals as naturals and w");
    app.add_option("--seed", g.seed, "Accepted and ignored; every computation is deterministic");

    std::string file;
    std::string file2;
    std::string host;
    std::size_t window = 1;
    std::size_t width = 0;
    std::size_t limit = 0;
    std::size_t bound = 2;
    std::size_t max_coverings = 0;
    std::size_t max_phis = 0;
    bool close = false;
    std::string carrier;
    std::string top;

    auto* validate = app.add_subcommand("validate", "Check a pattern file; with --host also decide H-coverage");
    validate->add_option("pattern", file)->required();
    validate->add_option("--host", host, "Hierarchy file");

    auto* build = app.add_subcommand("build", "Build a hierarchy from a carrier file");
    build->add_option("--carrier", carrier)->required();
    build->add_option("--top", top, "Indecomposable above the carrier; default is the least one");
    build->add_option("--width", width, "Generators per game move; 0 means every closed subset");
    build->add_flag("--close", close, "Close the carrier instead of rejecting a non-closed one");
    build->add_option("--out", g.out);

    auto* axioms = app.add_subcommand("axioms", "Check the hierarchy axioms");
    axioms->add_option("hierarchy", file)->required();
    axioms->add_option("--window", window, "Thresholds skipped in the cofinal check");

    auto* cover = app.add_subcommand("cover", "List coverings of a pattern");
    cover->add_option("pattern", file)->required();
    cover->add_option("hierarchy", host)->required();
    cover->add_option("--limit", limit, "Stop after this many; 0 lists all");
    cover->add_option("--out", g.out, "Write the first covering here");

    auto* iso = app.add_subcommand("isominimal", "Find the isominimal realization of a pattern");
    iso->add_option("pattern", file)->required();
    iso->add_option("hierarchy", host)->required();
    iso->add_option("--out", g.out);

    auto* core = app.add_subcommand("core", "Compute the core up to a size bound");
    core->add_option("hierarchy", host)->required();
    core->add_option("--bound", bound, "Maximum indecomposables per pattern")->check(CLI::PositiveNumber);
    core->add_option("--out", g.out);

    auto* compare = app.add_subcommand("compare", "Compare two cores");
    compare->add_option("core1", file)->required();
    compare->add_option("core2", file2)->required();

    auto* chains = app.add_subcommand("chains", "Longest strict le2 chain");
    chains->add_option("hierarchy", host)->required();

    auto* rule = app.add_subcommand("rule-test", "Test cofinal validity of a rule instance");
    rule->add_option("rule", file)->required();
    rule->add_option("hierarchy", host)->required();
    rule->add_option("--max-coverings", max_coverings, "0 checks every covering");
    rule->add_option("--max-phis", max_phis, "Regressive maps swept per covering");
    rule->add_option("--out", g.out);

    auto* dot = app.add_subcommand("export-dot", "Render a pattern, hierarchy or core as Graphviz text");
    dot->add_option("file", file)->required();
    dot->add_option("--out", g.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) {
            return cmd_validate(g, file, host);
        }
        if (build->parsed()) {
            return cmd_build(g, carrier, top, width, close);
        }
        if (axioms->parsed()) {
            return cmd_axioms(g, file, window);
        }
        if (cover->parsed()) {
            return cmd_cover(g, file, host, limit);
        }
        if (iso->parsed()) {
            return cmd_isominimal(g, file, host);
        }
        if (core->parsed()) {
            return cmd_core(g, host, bound);
        }
        if (compare->parsed()) {
            return cmd_compare(g, file, file2);
        }
        if (chains->parsed()) {
            return cmd_chains(g, host);
        }
        if (rule->parsed()) {
            return cmd_rule_test(g, file, host, max_coverings, max_phis);
        }
        if (dot->parsed()) {
            return cmd_export_dot(g, file);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
