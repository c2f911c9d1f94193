#pragma once

#include "patternforge/ordinal.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace pf {

/**
 * A finite set of ordinals containing 0 and closed under splitting an
 * element into its remainder and its last summand.
 *
 * Elements are kept in ascending order; positions double as indices for
 * relation matrices. Every summand of every element is itself an element,
 * so each element is described by the indices of its summands.
 */
class ClosedSet {
  public:
    /// The set {0}.
    ClosedSet();

    /// Throws PreconditionError if `elements` (in any order) is not closed.
    static ClosedSet from_elements(std::vector<Ordinal> elements);

    /// Least closed superset of `xs`.
    static ClosedSet closure(std::span<const Ordinal> xs);
    static ClosedSet closure(std::initializer_list<Ordinal> xs) {
        return closure(std::span<const Ordinal>(xs.begin(), xs.size()));
    }

    static bool is_closed(std::span<const Ordinal> elements);

    std::size_t size() const { return elements_.size(); }
    const Ordinal& operator[](std::size_t i) const { return elements_[i]; }
    const std::vector<Ordinal>& elements() const { return elements_; }
    auto begin() const { return elements_.begin(); }
    auto end() const { return elements_.end(); }

    std::optional<std::size_t> index_of(const Ordinal& x) const;
    bool contains(const Ordinal& x) const { return index_of(x).has_value(); }

    /// Indices of the indecomposable elements, ascending.
    const std::vector<std::size_t>& indecomposables() const { return indecomposables_; }
    bool is_indecomposable(std::size_t i) const { return summands_[i].size() == 1; }
    /// Summand indices of element i, non-increasing; empty for 0.
    const std::vector<std::size_t>& summands(std::size_t i) const { return summands_[i]; }
    /// Element whose summands are exactly `summand_indices`, if present.
    std::optional<std::size_t> compose(const std::vector<std::size_t>& summand_indices) const;

    bool is_subset_of(const ClosedSet& other) const;

    friend bool operator==(const ClosedSet& a, const ClosedSet& b) { return a.elements_ == b.elements_; }

  private:
    explicit ClosedSet(std::vector<Ordinal> sorted_closed);

    std::vector<Ordinal> elements_;
    std::vector<std::vector<std::size_t>> summands_;
    std::vector<std::size_t> indecomposables_;
    std::map<std::vector<std::size_t>, std::size_t> by_summands_;
};

inline ClosedSet closure(std::span<const Ordinal> xs) { return ClosedSet::closure(xs); }

/**
 * The arithmetic embedding of X determined by a strictly increasing map on
 * its indecomposables: each summand is replaced by its image.
 *
 * Throws PreconditionError if the map misses an indecomposable of X, is not
 * strictly increasing, or has a non-indecomposable argument or image.
 */
TermMap induced_embedding(const TermMap& indec_map, const ClosedSet& X);

} // namespace pf
