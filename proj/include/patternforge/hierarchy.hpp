#pragma once

#include "patternforge/closed_set.hpp"
#include "patternforge/ordinal.hpp"
#include "patternforge/pattern.hpp"
#include "patternforge/relation.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pf {

struct BuildOptions {
    /// Generators allowed in each game move; 0 quantifies over every closed subset.
    std::size_t width = 0;

    friend bool operator==(const BuildOptions&, const BuildOptions&) = default;
};

struct RoundLog {
    std::size_t round = 0;
    std::size_t game_pruned_le1 = 0;
    std::size_t game_pruned_le2 = 0;
    std::size_t structural_pruned = 0;

    std::size_t total() const { return game_pruned_le1 + game_pruned_le2 + structural_pruned; }
    friend bool operator==(const RoundLog&, const RoundLog&) = default;
};

struct BuildLog {
    std::vector<RoundLog> rounds;

    std::size_t round_count() const { return rounds.size(); }
    friend bool operator==(const BuildLog&, const BuildLog&) = default;
};

/**
 * A finite hierarchy: a closed carrier below an indecomposable `top` with
 * le1/le2 matrices. Values produced by build_hierarchy are greatest fixed
 * points of the elementarity games; from_parts admits arbitrary matrices
 * (used when loading files or forging counterexamples).
 */
class Hierarchy {
  public:
    static Hierarchy from_parts(ClosedSet carrier, Ordinal top, BitMatrix le1, BitMatrix le2, BuildLog log = {},
                                BuildOptions options = {});

    const ClosedSet& carrier() const { return carrier_; }
    const Ordinal& top() const { return top_; }
    const BitMatrix& le1() const { return le1_; }
    const BitMatrix& le2() const { return le2_; }
    const BitMatrix& relation(int k) const { return k == 1 ? le1_ : le2_; }
    const BuildLog& log() const { return log_; }
    const BuildOptions& options() const { return options_; }
    std::size_t size() const { return carrier_.size(); }

    /// Closed substructure on the given carrier positions.
    Pattern restrict(std::span<const std::size_t> positions) const;

    friend bool operator==(const Hierarchy&, const Hierarchy&) = default;

  private:
    Hierarchy(ClosedSet carrier, Ordinal top, BitMatrix le1, BitMatrix le2, BuildLog log, BuildOptions options)
        : carrier_(std::move(carrier)), top_(std::move(top)), le1_(std::move(le1)), le2_(std::move(le2)),
          log_(std::move(log)), options_(options) {}

    ClosedSet carrier_;
    Ordinal top_;
    BitMatrix le1_;
    BitMatrix le2_;
    BuildLog log_;
    BuildOptions options_;
};

/**
 * Whether the k-round game for the pair (a, b) of carrier positions, a <= b,
 * succeeds against the given relations. With `threshold`, every witness
 * image that is not fixed must lie strictly above that carrier position.
 */
bool game_holds(const ClosedSet& carrier, const BitMatrix& le1, const BitMatrix& le2, int k, std::size_t a,
                std::size_t b, const BuildOptions& options, std::optional<std::size_t> threshold = std::nullopt);

/// One elimination round in place; returns the number of pairs removed.
std::size_t pruning_round(const ClosedSet& carrier, BitMatrix& le1, BitMatrix& le2, const BuildOptions& options,
                          RoundLog* log = nullptr);

/// Throws PreconditionError if `top` is not indecomposable or lies below a carrier element.
Hierarchy build_hierarchy(const ClosedSet& carrier, const Ordinal& top, const BuildOptions& options = {});
/// Throws PreconditionError if `carrier` is not closed.
Hierarchy build_hierarchy(std::span<const Ordinal> carrier, const Ordinal& top, const BuildOptions& options = {});

/// Least indecomposable strictly above every element of the carrier.
Ordinal default_top(const ClosedSet& carrier);

/// Cofinal version of the k-game: it must succeed outright and above every
/// threshold below a except the `window` largest ones.
bool le_inf(const Hierarchy& H, int k, const Ordinal& a, const Ordinal& b, std::size_t window = 1);

struct InfFailure {
    int k = 0;
    Ordinal a;
    Ordinal b;
    friend bool operator==(const InfFailure&, const InfFailure&) = default;
};

struct AxiomReport {
    std::vector<Violation> partial_orders;  ///< hypothesis (b)
    std::vector<Violation> respect;         ///< hypothesis (c)
    bool top_ok = false;                    ///< hypothesis (d)
    std::string top_detail;
    std::size_t window = 1;
    std::size_t inf_pairs_checked = 0;
    std::vector<InfFailure> inf_failures;   ///< hypothesis (a), diagnostic
    std::vector<OrdinalPair> limit_continuity_failures;

    bool exact_ok() const { return partial_orders.empty() && respect.empty() && top_ok; }
    std::string to_text() const;
};

AxiomReport check_hierarchy_axioms(const Hierarchy& H, std::size_t window = 1);

} // namespace pf
