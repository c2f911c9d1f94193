#pragma once

#include "patternforge/covering.hpp"
#include "patternforge/hierarchy.hpp"
#include "patternforge/pattern.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pf {

/// Result of an isominimal search together with the per-instance checks of
/// minimality and isomorphism.
struct IsominimalResult {
    /// The hierarchy restricted to the chosen covering range.
    Pattern realization;
    /// A covering of the input pattern onto `realization`.
    Covering covering;
    std::size_t covers_enumerated = 0;
    /// Exactly one pointwise-minimal range among all covering ranges.
    bool unique_minimum = false;
    /// |realization| <=pw the range of every enumerated covering.
    bool below_every_cover = false;
    /// The input pattern is isomorphic to `realization`.
    bool isomorphic = false;
};

/// A pointwise-minimal closed substructure of H covering P; nullopt if P is not H-covered.
std::optional<IsominimalResult> isominimal(const Pattern& P, const Hierarchy& H);

struct PatternBounds {
    std::size_t max_indecomposables = 2;
    /// 0 means no limit on the universe size.
    std::size_t max_elements = 0;
};

/// One closed subset of the carrier per arithmetic isomorphism type, in canonical order.
std::vector<ClosedSet> realizable_universes(const ClosedSet& carrier, const PatternBounds& bounds);

/// Every H-covered pattern whose universe is one of realizable_universes, in canonical order
/// (indecomposable count, arithmetic type, then strict le1 and le2 pair lists).
std::vector<Pattern> covered_patterns(const Hierarchy& H, const PatternBounds& bounds);

struct Core {
    std::size_t size_bound = 0;
    std::string host_hash;
    /// Ascending.
    std::vector<Ordinal> members;
    /// Distinct isominimal realizations referenced by members.
    std::vector<Pattern> witnesses;
    /// witnesses[member_witness[i]] contains members[i].
    std::vector<std::size_t> member_witness;

    const Pattern& witness_of(std::size_t i) const { return witnesses[member_witness[i]]; }
    friend bool operator==(const Core&, const Core&) = default;
};

/// Union of the isominimal realizations of all H-covered patterns with at most
/// `size_bound` indecomposables.
Core compute_core(const Hierarchy& H, std::size_t size_bound);

struct InitialSegmentEmbedding {
    std::vector<OrdinalPair> map;
    bool initial_segment_flag = false;
};

struct CoreMismatch {
    std::size_t position = 0;
    std::string reason;
    std::optional<Ordinal> member1;
    std::optional<Ordinal> member2;
    std::optional<Pattern> witness1;
    std::optional<Pattern> witness2;
};

using CoreComparison = std::variant<InitialSegmentEmbedding, CoreMismatch>;

/// Throws PreconditionError if the size bounds differ.
CoreComparison compare_cores(const Core& C1, const Core& C2);

enum class PatternStatus { InvalidStructure, NotCovered, Covered };

struct PatternVerdict {
    PatternStatus status = PatternStatus::InvalidStructure;
    std::string reason;

    bool ok() const { return status == PatternStatus::Covered; }
};

PatternVerdict is_pattern(const CandidateStructure& S, const Hierarchy& H);

/// A longest chain under strict le2, lexicographically least among the longest;
/// empty when there is no strict le2 pair.
std::vector<Ordinal> longest_chain2(const Hierarchy& H);

} // namespace pf
