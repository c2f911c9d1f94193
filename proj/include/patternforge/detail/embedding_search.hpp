#pragma once

#include "patternforge/closed_set.hpp"
#include "patternforge/relation.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace pf::detail {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/**
 * A closed source structure described positionally: element e has summands
 * given as ranks into `indecomposables` (ascending element positions).
 * Relations are over element positions.
 */
struct SourceSpec {
    std::vector<std::size_t> indecomposables;
    std::vector<std::vector<std::size_t>> summand_ranks;
    BitMatrix le1;
    BitMatrix le2;

    std::size_t size() const { return summand_ranks.size(); }

    /// Whole closed set with the given relations.
    static SourceSpec of(const ClosedSet& set, const BitMatrix& le1, const BitMatrix& le2);
    /// Closed subset of `carrier` (ascending positions) with relations restricted from carrier matrices.
    static SourceSpec of_subset(const ClosedSet& carrier, std::span<const std::size_t> subset, const BitMatrix& le1,
                                const BitMatrix& le2);
};

struct TargetSpec {
    const ClosedSet& carrier;
    const BitMatrix& le1;
    const BitMatrix& le2;
};

/// Per-indecomposable constraints are indexed by source rank; carrier positions throughout.
struct SearchConstraints {
    std::vector<std::optional<std::size_t>> fixed;
    /// Exclusive lower bound on the image of each source indecomposable.
    std::vector<std::optional<std::size_t>> lower;
    /// Exclusive upper bound applied to the image of every source element.
    std::optional<std::size_t> element_upper;

    static SearchConstraints none(std::size_t ranks) {
        return {std::vector<std::optional<std::size_t>>(ranks), std::vector<std::optional<std::size_t>>(ranks),
                std::nullopt};
    }
};

/// Receives the image of every source element (carrier positions); return false to stop.
using EmbeddingVisitor = std::function<bool(const std::vector<std::size_t>&)>;

/**
 * Enumerates arithmetic embeddings of the source into the target that are
 * strictly increasing on indecomposables and preserve le1/le2 forward,
 * in lexicographic order of the indecomposable images.
 * Returns false if the visitor stopped the enumeration.
 */
bool search_embeddings(const SourceSpec& source, const TargetSpec& target, const SearchConstraints& constraints,
                       const EmbeddingVisitor& visit);

std::optional<std::vector<std::size_t>> first_embedding(const SourceSpec& source, const TargetSpec& target,
                                                        const SearchConstraints& constraints);

/// Closure inside `carrier` of a set of carrier positions, as ascending positions.
std::vector<std::size_t> closure_in(const ClosedSet& carrier, std::span<const std::size_t> generators);

} // namespace pf::detail
