#pragma once

#include "patternforge/closed_set.hpp"
#include "patternforge/ordinal.hpp"
#include "patternforge/relation.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pf {

using OrdinalPair = std::pair<Ordinal, Ordinal>;

/// Unchecked input: any finite universe and any pair lists; reflexive pairs are implied.
struct CandidateStructure {
    std::vector<Ordinal> universe;
    std::vector<OrdinalPair> le1;
    std::vector<OrdinalPair> le2;
};

/// One failed clause with a minimal witness (an element, pair or triple).
struct Violation {
    std::string clause;
    std::string description;
    std::vector<Ordinal> witness;

    std::string to_string() const;
    friend bool operator==(const Violation&, const Violation&) = default;
};

/**
 * Partial-order, inclusion (le2 in le1 in le0) and respect clauses over an
 * ascending universe. Shared by pattern validation and hierarchy checks.
 */
std::vector<Violation> check_order_axioms(std::span<const Ordinal> universe, const BitMatrix& le1,
                                          const BitMatrix& le2);
std::vector<Violation> check_respect(std::span<const Ordinal> universe, const BitMatrix& le1, const BitMatrix& le2);

/**
 * A finite L2-structure on a closed universe. The order le0 is the ordinal
 * order and is never stored; le1 and le2 are matrices over universe positions.
 * Instances always satisfy every pattern invariant.
 */
class Pattern {
  public:
    /// The pattern on {0}.
    Pattern();

    /// Throws PreconditionError listing the violations if `s` is not a pattern.
    static Pattern from_candidate(const CandidateStructure& s);
    static Pattern from_matrices(ClosedSet universe, BitMatrix le1, BitMatrix le2);
    /// Only reflexive pairs in le1 and le2.
    static Pattern trivial(ClosedSet universe);

    const ClosedSet& universe() const { return universe_; }
    std::size_t size() const { return universe_.size(); }
    const BitMatrix& le1() const { return le1_; }
    const BitMatrix& le2() const { return le2_; }
    const BitMatrix& relation(int k) const { return k == 1 ? le1_ : le2_; }

    /// Strict pairs only, ascending.
    CandidateStructure to_candidate() const;

    /// Substructure on the given positions; throws unless they form a closed set.
    Pattern restrict(std::span<const std::size_t> positions) const;

    friend bool operator==(const Pattern&, const Pattern&) = default;

  private:
    Pattern(ClosedSet universe, BitMatrix le1, BitMatrix le2)
        : universe_(std::move(universe)), le1_(std::move(le1)), le2_(std::move(le2)) {}

    ClosedSet universe_;
    BitMatrix le1_;
    BitMatrix le2_;
};

/// Empty when `s` is a pattern; otherwise every violated clause.
std::vector<Violation> validate_pattern(const CandidateStructure& s);

bool is_closed_substructure(const Pattern& Q, const Pattern& P);

/// The isomorphism matching indecomposables in increasing order, if it is one.
std::optional<TermMap> find_isomorphism(const Pattern& P, const Pattern& Q);

/// Increasing-enumeration pairing of two equal-size sets with per-position comparisons.
struct PointwiseWitness {
    std::vector<OrdinalPair> pairing;
    std::vector<Order> comparisons;

    bool le() const;
};

/// Throws PreconditionError on a cardinality mismatch.
PointwiseWitness pointwise_compare(std::span<const Ordinal> X, std::span<const Ordinal> Y);
bool pointwise_le(std::span<const Ordinal> X, std::span<const Ordinal> Y);

/// S has at least T's relations; throws PreconditionError unless the universes agree.
bool covers(const Pattern& S, const Pattern& T);

} // namespace pf
