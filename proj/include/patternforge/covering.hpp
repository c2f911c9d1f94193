#pragma once

#include "patternforge/hierarchy.hpp"
#include "patternforge/pattern.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace pf {

/**
 * A covering of a pattern in a hierarchy: the image of each universe
 * element, aligned with the pattern's universe order. The pattern and the
 * hierarchy are passed alongside; a Covering never outlives their meaning.
 */
struct Covering {
    std::vector<Ordinal> image;

    TermMap as_map(const Pattern& source) const;
    friend bool operator==(const Covering&, const Covering&) = default;
};

/// Bounds on the nonminimal indecomposables in a covering's range; bounds(x) < x.
class RegressiveMap {
  public:
    RegressiveMap() = default;
    /// Throws PreconditionError if some bound is not below its argument.
    explicit RegressiveMap(TermMap bounds);

    /// Each nonminimal indecomposable in `range` mapped to its carrier predecessor.
    static RegressiveMap maximal(const Hierarchy& H, std::span<const Ordinal> range);

    const TermMap& bounds() const { return bounds_; }
    std::optional<Ordinal> at(const Ordinal& x) const;

    friend bool operator==(const RegressiveMap&, const RegressiveMap&) = default;

  private:
    TermMap bounds_;
};

/// Nonminimal indecomposables of the carrier occurring in `range`, ascending.
std::vector<Ordinal> regressive_domain(const Hierarchy& H, std::span<const Ordinal> range);

bool is_covering(const TermMap& h, const Pattern& P, const Hierarchy& H);
/// Positional form: image[i] is the carrier position of P's i-th element.
bool is_covering(std::span<const std::size_t> image, const Pattern& P, const Hierarchy& H);

struct CoveringConstraints {
    /// Images already decided for some indecomposables of the pattern.
    TermMap fixed;
    /// Exclusive lower bounds on the images of some indecomposables of the pattern.
    TermMap lower;
    /// Stop after this many results; 0 means no limit.
    std::size_t limit = 0;
};

/// All coverings satisfying the constraints, in lexicographic order of the indecomposable images.
std::vector<Covering> search_coverings(const Pattern& P, const Hierarchy& H, const CoveringConstraints& constraints = {});

/// Throws PreconditionError unless h's pattern is a closed substructure of hplus's and hplus extends h.
bool extends_above(const Pattern& Pplus, const Covering& hplus, const Pattern& P, const Covering& h,
                   const RegressiveMap& phi);

/// Throws PreconditionError unless P is a closed substructure of Pplus and h covers P in H.
std::optional<Covering> extend_covering(const Pattern& P, const Pattern& Pplus, const Covering& h,
                                        const RegressiveMap& phi, const Hierarchy& H);

struct CofinalBudget {
    /// 0 means every covering.
    std::size_t max_coverings = 0;
    /// When nonzero, also sweep up to this many regressive maps per covering.
    std::size_t max_phis = 0;
};

struct CofinalVerdict {
    bool valid = true;
    std::size_t coverings_checked = 0;
    std::size_t phis_checked = 0;
    bool budget_exhausted = false;
    std::optional<Covering> counterexample;
    std::optional<RegressiveMap> counterexample_phi;
};

CofinalVerdict test_cofinal_validity(const Pattern& P, const Pattern& Pplus, const Hierarchy& H,
                                     const CofinalBudget& budget = {});

/// Every regressive map on `domain` into the carrier, in lexicographic order, up to `limit` (0: all).
std::vector<RegressiveMap> all_regressive_maps(const Hierarchy& H, std::span<const Ordinal> domain,
                                               std::size_t limit = 0);

} // namespace pf
