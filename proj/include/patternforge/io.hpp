#pragma once

#include "patternforge/core.hpp"
#include "patternforge/covering.hpp"
#include "patternforge/hierarchy.hpp"
#include "patternforge/pattern.hpp"
#include "patternforge/rules.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pf {

using Json = nlohmann::json;

/// First line of every file written by this library.
inline constexpr std::string_view kFormatHeader = "patternforge-v1";

// Every reader throws ParseError on malformed text and PreconditionError
// when well-formed text describes an invalid object.

Json to_json(const Pattern& P);
Json to_json(const CandidateStructure& s);
Json to_json(const Hierarchy& H);
Json to_json(const Core& C);
Json to_json(const Pattern& P, const Covering& h);
Json to_json(const RuleInstance& r);
Json to_json(const CofinalVerdict& v, const Pattern& P);
Json to_json(const Violation& v);

CandidateStructure candidate_from_json(const Json& j);
Pattern pattern_from_json(const Json& j);
Hierarchy hierarchy_from_json(const Json& j);
Core core_from_json(const Json& j);
std::pair<Pattern, Covering> covering_from_json(const Json& j);
RuleInstance rule_from_json(const Json& j);

/// Header line, then the JSON body, then a newline.
std::string format_document(const Json& body);
/// Throws ParseError unless `text` starts with the header line and holds one JSON value.
Json parse_document(std::string_view text);

std::string write_pattern(const Pattern& P);
std::string write_hierarchy(const Hierarchy& H);
std::string write_core(const Core& C);
std::string write_covering(const Pattern& P, const Covering& h);
std::string write_rule(const RuleInstance& r);

CandidateStructure read_candidate(std::string_view text);
Pattern read_pattern(std::string_view text);
/// Also rejects a file whose stored hash does not match its content.
Hierarchy read_hierarchy(std::string_view text);
Core read_core(std::string_view text);
std::pair<Pattern, Covering> read_covering(std::string_view text);
RuleInstance read_rule(std::string_view text);

/// One ordinal per line; the header line, blank lines and '#' comments are skipped.
std::vector<Ordinal> read_carrier(std::string_view text);
std::string write_carrier(const ClosedSet& carrier);

/// FNV-1a 64 of the hierarchy body, as 16 lowercase hex digits.
std::string hierarchy_hash(const Hierarchy& H);
std::string fnv1a_hex(std::string_view data);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

} // namespace pf
