#pragma once

#include "patternforge/ordinal.hpp"
#include "patternforge/pattern.hpp"

#include <optional>
#include <span>
#include <string_view>

namespace pf {

enum class RuleKind { arith_ext, reflect1_down, reflect2_up, generic };

std::string_view to_string(RuleKind kind);
std::optional<RuleKind> rule_kind_from_string(std::string_view name);

/// A pair premise | conclusion with the premise a closed substructure of the conclusion.
struct RuleInstance {
    Pattern premise;
    Pattern conclusion;
    RuleKind kind = RuleKind::generic;

    friend bool operator==(const RuleInstance&, const RuleInstance&) = default;
};

/**
 * Least relations on `universe` containing the seeds that satisfy every
 * pattern clause: le2 inside le1, transitivity, and the respect clauses.
 * Seed pairs must be ascending.
 */
Pattern force_relations(ClosedSet universe, BitMatrix le1, BitMatrix le2);

/// Throws PreconditionError if the closure of |P| and `new_terms` has an indecomposable outside |P|.
RuleInstance make_arith_ext(const Pattern& P, std::span<const Ordinal> new_terms);

/**
 * Adds a fresh copy of X strictly between the elements below a and b,
 * using the least fresh indecomposables above the elements below a.
 * X is first replaced by the part above a of the closure of X with the
 * elements below a. The chosen copy map is written to `copy` if given.
 * Throws PreconditionError on bad arguments or when there is no room.
 */
RuleInstance make_reflect1_down(const Pattern& P, const Ordinal& a, const Ordinal& b, std::span<const Ordinal> X,
                                TermMap* copy = nullptr);

/// Throws PreconditionError unless P is a closed substructure of Pplus.
RuleInstance make_generic(const Pattern& P, const Pattern& Pplus, RuleKind kind = RuleKind::generic);

} // namespace pf
