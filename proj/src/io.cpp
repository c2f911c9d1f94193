#include "patternforge/io.hpp"

#include "patternforge/error.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pf {

namespace {

std::string str(const Ordinal& x) { return x.to_string(); }

Ordinal ord(const Json& j) {
    if (!j.is_string()) {
        throw ParseError("expected an ordinal string, got " + j.dump());
    }
    return Ordinal::parse(j.get<std::string>());
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

const Json& array_field(const Json& j, const char* key) {
    const Json& a = field(j, key);
    if (!a.is_array()) {
        throw ParseError(std::string("field \"") + key + "\" is not an array");
    }
    return a;
}

std::size_t count(const Json& j, const char* what) {
    if (!j.is_number_unsigned()) {
        throw ParseError(std::string(what) + " must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

Json pairs_json(const std::vector<OrdinalPair>& pairs) {
    Json out = Json::array();
    for (const auto& [a, b] : pairs) {
        out.push_back(Json::array({str(a), str(b)}));
    }
    return out;
}

std::vector<OrdinalPair> pairs_from(const Json& a, const char* key) {
    std::vector<OrdinalPair> out;
    for (const auto& p : a) {
        if (!p.is_array() || p.size() != 2) {
            throw ParseError(std::string("entries of \"") + key + "\" must be pairs");
        }
        out.emplace_back(ord(p[0]), ord(p[1]));
    }
    return out;
}

std::vector<OrdinalPair> strict_pairs(const ClosedSet& u, const BitMatrix& m) {
    std::vector<OrdinalPair> out;
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (i != j && m(i, j)) {
                out.emplace_back(u[i], u[j]);
            }
        }
    }
    return out;
}

BitMatrix matrix_from(const ClosedSet& u, const std::vector<OrdinalPair>& pairs) {
    BitMatrix m = BitMatrix::identity(u.size());
    for (const auto& [a, b] : pairs) {
        auto i = u.index_of(a);
        auto j = u.index_of(b);
        if (!i || !j) {
            throw PreconditionError("relation pair mentions " + (i ? b : a).to_string(true) +
                                    ", which is not in the carrier");
        }
        m.set(*i, *j);
    }
    return m;
}

std::vector<Ordinal> ordinals_from(const Json& a) {
    std::vector<Ordinal> out;
    for (const auto& x : a) {
        out.push_back(ord(x));
    }
    return out;
}

Json ordinals_json(std::span<const Ordinal> xs) {
    Json out = Json::array();
    for (const auto& x : xs) {
        out.push_back(str(x));
    }
    return out;
}

Json hierarchy_body(const Hierarchy& H) {
    Json rounds = Json::array();
    for (const auto& r : H.log().rounds) {
        rounds.push_back({{"round", r.round},
                          {"game_pruned_le1", r.game_pruned_le1},
                          {"game_pruned_le2", r.game_pruned_le2},
                          {"structural_pruned", r.structural_pruned}});
    }
    return {{"carrier", ordinals_json(H.carrier().elements())},
            {"top", str(H.top())},
            {"width", H.options().width},
            {"le1", pairs_json(strict_pairs(H.carrier(), H.le1()))},
            {"le2", pairs_json(strict_pairs(H.carrier(), H.le2()))},
            {"build_log", {{"rounds", rounds}}}};
}

} // namespace

Json to_json(const CandidateStructure& s) {
    return {{"universe", ordinals_json(s.universe)}, {"le1", pairs_json(s.le1)}, {"le2", pairs_json(s.le2)}};
}

Json to_json(const Pattern& P) { return to_json(P.to_candidate()); }

Json to_json(const Violation& v) {
    return {{"clause", v.clause}, {"description", v.description}, {"witness", ordinals_json(v.witness)}};
}

Json to_json(const Hierarchy& H) {
    Json j = hierarchy_body(H);
    j["hash"] = hierarchy_hash(H);
    return j;
}

Json to_json(const Core& C) {
    Json witnesses = Json::array();
    for (const auto& w : C.witnesses) {
        witnesses.push_back(to_json(w));
    }
    return {{"size_bound", C.size_bound},
            {"host_hash", C.host_hash},
            {"members", ordinals_json(C.members)},
            {"witnesses", witnesses},
            {"member_witness", C.member_witness}};
}

Json to_json(const Pattern& P, const Covering& h) {
    Json assignment = Json::array();
    for (std::size_t i = 0; i < h.image.size(); ++i) {
        assignment.push_back(Json::array({str(P.universe()[i]), str(h.image[i])}));
    }
    return {{"pattern", to_json(P)}, {"assignment", assignment}};
}

Json to_json(const RuleInstance& r) {
    return {{"premise", to_json(r.premise)}, {"conclusion", to_json(r.conclusion)}, {"kind", std::string(to_string(r.kind))}};
}

Json to_json(const CofinalVerdict& v, const Pattern& P) {
    Json j{{"valid", v.valid},
           {"coverings_checked", v.coverings_checked},
           {"phis_checked", v.phis_checked},
           {"budget_exhausted", v.budget_exhausted},
           {"counterexample", nullptr},
           {"counterexample_phi", nullptr}};
    if (v.counterexample) {
        j["counterexample"] = to_json(P, *v.counterexample)["assignment"];
    }
    if (v.counterexample_phi) {
        Json phi = Json::array();
        for (const auto& [x, bound] : v.counterexample_phi->bounds()) {
            phi.push_back(Json::array({str(x), str(bound)}));
        }
        j["counterexample_phi"] = phi;
    }
    return j;
}

CandidateStructure candidate_from_json(const Json& j) {
    CandidateStructure s;
    s.universe = ordinals_from(array_field(j, "universe"));
    s.le1 = pairs_from(array_field(j, "le1"), "le1");
    s.le2 = pairs_from(array_field(j, "le2"), "le2");
    return s;
}

Pattern pattern_from_json(const Json& j) { return Pattern::from_candidate(candidate_from_json(j)); }

Hierarchy hierarchy_from_json(const Json& j) {
    const auto carrier = ClosedSet::from_elements(ordinals_from(array_field(j, "carrier")));
    BuildLog log;
    for (const auto& r : array_field(field(j, "build_log"), "rounds")) {
        log.rounds.push_back({count(field(r, "round"), "round"), count(field(r, "game_pruned_le1"), "game_pruned_le1"),
                              count(field(r, "game_pruned_le2"), "game_pruned_le2"),
                              count(field(r, "structural_pruned"), "structural_pruned")});
    }
    BuildOptions options;
    options.width = count(field(j, "width"), "width");
    auto le1 = matrix_from(carrier, pairs_from(array_field(j, "le1"), "le1"));
    auto le2 = matrix_from(carrier, pairs_from(array_field(j, "le2"), "le2"));
    Hierarchy H = Hierarchy::from_parts(carrier, ord(field(j, "top")), std::move(le1), std::move(le2), std::move(log),
                                        options);
    if (j.contains("hash")) {
        const Json& stored = j.at("hash");
        if (!stored.is_string() || stored.get<std::string>() != hierarchy_hash(H)) {
            throw ParseError("hierarchy hash does not match its content");
        }
    }
    return H;
}

Core core_from_json(const Json& j) {
    Core C;
    C.size_bound = count(field(j, "size_bound"), "size_bound");
    const Json& hh = field(j, "host_hash");
    if (!hh.is_string()) {
        throw ParseError("host_hash must be a string");
    }
    C.host_hash = hh.get<std::string>();
    C.members = ordinals_from(array_field(j, "members"));
    for (const auto& w : array_field(j, "witnesses")) {
        C.witnesses.push_back(pattern_from_json(w));
    }
    for (const auto& i : array_field(j, "member_witness")) {
        C.member_witness.push_back(count(i, "member_witness entry"));
    }
    if (C.member_witness.size() != C.members.size()) {
        throw ParseError("member_witness and members differ in length");
    }
    for (std::size_t i = 0; i < C.members.size(); ++i) {
        if (C.member_witness[i] >= C.witnesses.size() || !C.witness_of(i).universe().contains(C.members[i])) {
            throw PreconditionError("member " + C.members[i].to_string(true) + " is not in its witness");
        }
        if (i > 0 && !(C.members[i - 1] < C.members[i])) {
            throw PreconditionError("core members are not strictly ascending");
        }
    }
    return C;
}

std::pair<Pattern, Covering> covering_from_json(const Json& j) {
    Pattern P = pattern_from_json(field(j, "pattern"));
    TermMap m;
    for (const auto& [x, y] : pairs_from(array_field(j, "assignment"), "assignment")) {
        if (!m.emplace(x, y).second) {
            throw PreconditionError("assignment lists " + x.to_string(true) + " twice");
        }
    }
    Covering h;
    for (const auto& x : P.universe()) {
        auto it = m.find(x);
        if (it == m.end()) {
            throw PreconditionError("assignment misses " + x.to_string(true));
        }
        h.image.push_back(it->second);
    }
    if (m.size() != P.size()) {
        throw PreconditionError("assignment mentions elements outside the pattern");
    }
    return {std::move(P), std::move(h)};
}

RuleInstance rule_from_json(const Json& j) {
    const Json& k = field(j, "kind");
    auto kind = k.is_string() ? rule_kind_from_string(k.get<std::string>()) : std::nullopt;
    if (!kind) {
        throw ParseError("unknown rule kind " + k.dump());
    }
    return make_generic(pattern_from_json(field(j, "premise")), pattern_from_json(field(j, "conclusion")), *kind);
}

std::string format_document(const Json& body) { return std::string(kFormatHeader) + "\n" + body.dump(2) + "\n"; }

Json parse_document(std::string_view text) {
    const auto eol = text.find('\n');
    std::string_view first = text.substr(0, eol);
    if (!first.empty() && first.back() == '\r') {
        first.remove_suffix(1);
    }
    if (first != kFormatHeader) {
        throw ParseError("missing \"" + std::string(kFormatHeader) + "\" header line");
    }
    const std::string_view rest = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    try {
        return Json::parse(rest.begin(), rest.end());
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

namespace {

template <typename Fn>
auto reading(std::string_view text, Fn&& fn) {
    const Json j = parse_document(text);
    try {
        return fn(j);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
}

} // namespace

std::string write_pattern(const Pattern& P) { return format_document(to_json(P)); }
std::string write_hierarchy(const Hierarchy& H) { return format_document(to_json(H)); }
std::string write_core(const Core& C) { return format_document(to_json(C)); }
std::string write_covering(const Pattern& P, const Covering& h) { return format_document(to_json(P, h)); }
std::string write_rule(const RuleInstance& r) { return format_document(to_json(r)); }

CandidateStructure read_candidate(std::string_view text) { return reading(text, candidate_from_json); }
Pattern read_pattern(std::string_view text) { return reading(text, pattern_from_json); }
Hierarchy read_hierarchy(std::string_view text) { return reading(text, hierarchy_from_json); }
Core read_core(std::string_view text) { return reading(text, core_from_json); }
std::pair<Pattern, Covering> read_covering(std::string_view text) { return reading(text, covering_from_json); }
RuleInstance read_rule(std::string_view text) { return reading(text, rule_from_json); }

std::vector<Ordinal> read_carrier(std::string_view text) {
    std::vector<Ordinal> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) {
            continue;
        }
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        if (lineno == 1 && line == kFormatHeader) {
            continue;
        }
        try {
            out.push_back(Ordinal::parse(line));
        } catch (const ParseError& err) {
            throw ParseError("line " + std::to_string(lineno) + ": " + err.what());
        }
    }
    return out;
}

std::string write_carrier(const ClosedSet& carrier) {
    std::string out(kFormatHeader);
    out += '\n';
    for (const auto& x : carrier) {
        out += x.to_string();
        out += '\n';
    }
    return out;
}

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string hierarchy_hash(const Hierarchy& H) { return fnv1a_hex(hierarchy_body(H).dump()); }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read " + path.string());
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write " + path.string());
    }
    out << content;
}

} // namespace pf
