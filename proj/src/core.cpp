#include "patternforge/core.hpp"

#include "patternforge/detail/embedding_search.hpp"
#include "patternforge/error.hpp"
#include "patternforge/io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace pf {

namespace {

bool positions_pointwise_le(const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > y[i]) {
            return false;
        }
    }
    return true;
}

} // namespace

std::optional<IsominimalResult> isominimal(const Pattern& P, const Hierarchy& H) {
    const auto covs = search_coverings(P, H);
    if (covs.empty()) {
        return std::nullopt;
    }
    // Coverings are strictly increasing, so the image vector is the sorted range.
    std::vector<std::vector<std::size_t>> ranges;
    ranges.reserve(covs.size());
    for (const auto& c : covs) {
        std::vector<std::size_t> r;
        for (const auto& y : c.image) {
            r.push_back(*H.carrier().index_of(y));
        }
        ranges.push_back(std::move(r));
    }
    std::vector<std::size_t> minimal;
    for (std::size_t i = 0; i < ranges.size(); ++i) {
        bool is_min = true;
        for (std::size_t j = 0; j < ranges.size() && is_min; ++j) {
            is_min = j == i || !positions_pointwise_le(ranges[j], ranges[i]) || ranges[j] == ranges[i];
        }
        if (is_min) {
            minimal.push_back(i);
        }
    }
    const std::size_t chosen = *std::min_element(minimal.begin(), minimal.end(), [&](std::size_t a, std::size_t b) {
        return ranges[a] < ranges[b];
    });
    IsominimalResult res{H.restrict(ranges[chosen]), covs[chosen], covs.size(), minimal.size() == 1, true, false};
    for (const auto& r : ranges) {
        if (!positions_pointwise_le(ranges[chosen], r)) {
            res.below_every_cover = false;
            break;
        }
    }
    res.isomorphic = find_isomorphism(P, res.realization).has_value();
    return res;
}

namespace {

using ShapeKey = std::vector<std::vector<std::size_t>>;

ShapeKey shape_key(const ClosedSet& carrier, const std::vector<std::size_t>& subset) {
    std::map<std::size_t, std::size_t> rank;
    for (auto p : subset) {
        if (carrier.is_indecomposable(p)) {
            rank.emplace(p, rank.size());
        }
    }
    ShapeKey key;
    for (auto p : subset) {
        std::vector<std::size_t> ranks;
        for (auto s : carrier.summands(p)) {
            ranks.push_back(rank.at(s));
        }
        key.push_back(std::move(ranks));
    }
    return key;
}

template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) {
        return;
    }
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) {
        idx[i] = i;
    }
    while (true) {
        fn(static_cast<const std::vector<std::size_t>&>(idx));
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) {
            --i;
        }
        if (i == 0) {
            return;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

} // namespace

std::vector<ClosedSet> realizable_universes(const ClosedSet& carrier, const PatternBounds& bounds) {
    const auto& indecs = carrier.indecomposables();
    std::map<std::pair<std::size_t, ShapeKey>, std::vector<std::size_t>> shapes;
    const std::size_t max_m = std::min(bounds.max_indecomposables, indecs.size());
    for (std::size_t m = 0; m <= max_m; ++m) {
        for_each_combination(indecs.size(), m, [&](const std::vector<std::size_t>& pick) {
            std::set<std::size_t> letters;
            for (auto r : pick) {
                letters.insert(indecs[r]);
            }
            std::vector<std::size_t> decomposables;
            for (std::size_t p = 0; p < carrier.size(); ++p) {
                const auto& parts = carrier.summands(p);
                if (parts.size() >= 2 &&
                    std::all_of(parts.begin(), parts.end(), [&](std::size_t s) { return letters.contains(s); })) {
                    decomposables.push_back(p);
                }
            }
            std::vector<std::size_t> base{0};
            base.insert(base.end(), letters.begin(), letters.end());
            if (bounds.max_elements != 0 && base.size() > bounds.max_elements) {
                return;
            }
            std::vector<char> in(carrier.size(), 0);
            for (auto p : base) {
                in[p] = 1;
            }
            std::vector<std::size_t> chosen;
            // Decomposables ascend, so each remainder is decided before its extensions.
            auto rec = [&](auto&& self, std::size_t d) -> void {
                if (d == decomposables.size()) {
                    std::vector<std::size_t> subset = base;
                    subset.insert(subset.end(), chosen.begin(), chosen.end());
                    std::sort(subset.begin(), subset.end());
                    auto key = shape_key(carrier, subset);
                    shapes.try_emplace({m, std::move(key)}, std::move(subset));
                    return;
                }
                self(self, d + 1);
                const std::size_t p = decomposables[d];
                const auto& parts = carrier.summands(p);
                std::vector<std::size_t> rem(parts.begin(), parts.end() - 1);
                const std::size_t r = *carrier.compose(rem);
                const bool room = bounds.max_elements == 0 || base.size() + chosen.size() < bounds.max_elements;
                if (room && in[r] != 0) {
                    in[p] = 1;
                    chosen.push_back(p);
                    self(self, d + 1);
                    chosen.pop_back();
                    in[p] = 0;
                }
            };
            rec(rec, 0);
        });
    }
    std::vector<ClosedSet> out;
    for (const auto& [key, subset] : shapes) {
        std::vector<Ordinal> elems;
        for (auto p : subset) {
            elems.push_back(carrier[p]);
        }
        out.push_back(ClosedSet::from_elements(std::move(elems)));
    }
    return out;
}

namespace {

using PairList = std::vector<std::pair<std::size_t, std::size_t>>;

struct RelationChoice {
    PairList le1;
    PairList le2;
    auto operator<=>(const RelationChoice&) const = default;
};

constexpr std::size_t kMaxPullbackPairs = 20;

} // namespace

std::vector<Pattern> covered_patterns(const Hierarchy& H, const PatternBounds& bounds) {
    std::vector<Pattern> out;
    for (const auto& universe : realizable_universes(H.carrier(), bounds)) {
        const std::size_t n = universe.size();
        const auto id = BitMatrix::identity(n);
        const auto src = detail::SourceSpec::of(universe, id, id);
        const detail::TargetSpec target{H.carrier(), H.le1(), H.le2()};
        // Relations a covering can carry are those pulled back along some arithmetic embedding.
        std::set<std::pair<PairList, PairList>> pullbacks;
        detail::search_embeddings(src, target, detail::SearchConstraints::none(src.indecomposables.size()),
                                  [&](const std::vector<std::size_t>& img) {
                                      PairList r1;
                                      PairList r2;
                                      for (std::size_t a = 0; a < n; ++a) {
                                          for (std::size_t b = a + 1; b < n; ++b) {
                                              if (H.le1()(img[a], img[b])) {
                                                  r1.emplace_back(a, b);
                                              }
                                              if (H.le2()(img[a], img[b])) {
                                                  r2.emplace_back(a, b);
                                              }
                                          }
                                      }
                                      pullbacks.emplace(std::move(r1), std::move(r2));
                                      return true;
                                  });
        std::set<RelationChoice> choices;
        for (const auto& [r1, r2] : pullbacks) {
            if (r1.size() > kMaxPullbackPairs) {
                throw std::length_error("too many strict pairs to enumerate relation subsets");
            }
            for (std::size_t m1 = 0; m1 < (std::size_t{1} << r1.size()); ++m1) {
                PairList s1;
                PairList avail2;
                for (std::size_t i = 0; i < r1.size(); ++i) {
                    if ((m1 >> i) & 1U) {
                        s1.push_back(r1[i]);
                        if (std::binary_search(r2.begin(), r2.end(), r1[i])) {
                            avail2.push_back(r1[i]);
                        }
                    }
                }
                for (std::size_t m2 = 0; m2 < (std::size_t{1} << avail2.size()); ++m2) {
                    PairList s2;
                    for (std::size_t i = 0; i < avail2.size(); ++i) {
                        if ((m2 >> i) & 1U) {
                            s2.push_back(avail2[i]);
                        }
                    }
                    BitMatrix le1 = id;
                    BitMatrix le2 = id;
                    for (auto [a, b] : s1) {
                        le1.set(a, b);
                    }
                    for (auto [a, b] : s2) {
                        le2.set(a, b);
                    }
                    if (check_order_axioms(universe.elements(), le1, le2).empty() &&
                        check_respect(universe.elements(), le1, le2).empty()) {
                        choices.insert({s1, s2});
                    }
                }
            }
        }
        for (const auto& ch : choices) {
            BitMatrix le1 = id;
            BitMatrix le2 = id;
            for (auto [a, b] : ch.le1) {
                le1.set(a, b);
            }
            for (auto [a, b] : ch.le2) {
                le2.set(a, b);
            }
            out.push_back(Pattern::from_matrices(universe, std::move(le1), std::move(le2)));
        }
    }
    return out;
}

Core compute_core(const Hierarchy& H, std::size_t size_bound) {
    if (size_bound < 1) {
        throw PreconditionError("core size bound must be at least 1");
    }
    Core core;
    core.size_bound = size_bound;
    core.host_hash = hierarchy_hash(H);
    std::map<Ordinal, std::size_t> witness_of;
    for (const auto& P : covered_patterns(H, {size_bound, 0})) {
        auto iso = isominimal(P, H);
        if (!iso) {
            throw std::logic_error("covered pattern without a realization");
        }
        std::optional<std::size_t> slot;
        for (const auto& x : iso->realization.universe()) {
            if (witness_of.contains(x)) {
                continue;
            }
            if (!slot) {
                auto it = std::find(core.witnesses.begin(), core.witnesses.end(), iso->realization);
                slot = static_cast<std::size_t>(it - core.witnesses.begin());
                if (it == core.witnesses.end()) {
                    core.witnesses.push_back(iso->realization);
                }
            }
            witness_of.emplace(x, *slot);
        }
    }
    for (const auto& [x, w] : witness_of) {
        core.members.push_back(x);
        core.member_witness.push_back(w);
    }
    return core;
}

CoreComparison compare_cores(const Core& C1, const Core& C2) {
    if (C1.size_bound != C2.size_bound) {
        throw PreconditionError("cores were computed with different size bounds");
    }
    InitialSegmentEmbedding emb;
    for (std::size_t i = 0; i < C1.members.size(); ++i) {
        if (i >= C2.members.size()) {
            CoreMismatch m;
            m.position = i;
            m.reason = "codomain core has only " + std::to_string(C2.members.size()) + " members";
            m.member1 = C1.members[i];
            m.witness1 = C1.witness_of(i);
            return m;
        }
        const Pattern& w1 = C1.witness_of(i);
        const Pattern& w2 = C2.witness_of(i);
        auto iso = find_isomorphism(w1, w2);
        std::string reason;
        if (!iso) {
            reason = "witness patterns are not isomorphic";
        } else if (iso->at(C1.members[i]) != C2.members[i]) {
            reason = "witness isomorphism does not send member to member";
        }
        if (!reason.empty()) {
            return CoreMismatch{i, reason, C1.members[i], C2.members[i], w1, w2};
        }
        emb.map.emplace_back(C1.members[i], C2.members[i]);
    }
    // Image must be downward closed among codomain members.
    emb.initial_segment_flag = true;
    for (std::size_t i = 0; i < emb.map.size(); ++i) {
        if (emb.map[i].second != C2.members[i]) {
            emb.initial_segment_flag = false;
        }
    }
    return emb;
}

PatternVerdict is_pattern(const CandidateStructure& S, const Hierarchy& H) {
    auto violations = validate_pattern(S);
    if (!violations.empty()) {
        return {PatternStatus::InvalidStructure, "invalid structure: " + violations.front().to_string()};
    }
    const Pattern P = Pattern::from_candidate(S);
    CoveringConstraints one;
    one.limit = 1;
    if (!search_coverings(P, H, one).empty()) {
        return {PatternStatus::Covered, "H-covered"};
    }
    std::string reason = "valid but not H-covered";
    const auto& u = P.universe();
    for (std::size_t a = 0; a < P.size(); ++a) {
        for (std::size_t b = a + 1; b < P.size(); ++b) {
            if (P.le2()(a, b) && (!u.is_indecomposable(a) || !u.is_indecomposable(b))) {
                return {PatternStatus::NotCovered, reason + ": strict le2 pair " + u[a].to_string(true) + ", " +
                                                       u[b].to_string(true) + " is not between indecomposables"};
            }
            if (P.le1()(a, b) && !u.is_indecomposable(a)) {
                return {PatternStatus::NotCovered, reason + ": strict le1 pair " + u[a].to_string(true) + ", " +
                                                       u[b].to_string(true) + " has a decomposable left element"};
            }
        }
    }
    return {PatternStatus::NotCovered, reason};
}

std::vector<Ordinal> longest_chain2(const Hierarchy& H) {
    const std::size_t n = H.size();
    std::vector<std::size_t> best(n, 1);
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (H.le2()(i, j)) {
                best[i] = std::max(best[i], best[j] + 1);
            }
        }
    }
    const std::size_t len = n == 0 ? 0 : *std::max_element(best.begin(), best.end());
    if (len < 2) {
        return {};
    }
    std::vector<Ordinal> chain;
    std::size_t cur = static_cast<std::size_t>(std::find(best.begin(), best.end(), len) - best.begin());
    chain.push_back(H.carrier()[cur]);
    while (best[cur] > 1) {
        for (std::size_t j = cur + 1; j < n; ++j) {
            if (H.le2()(cur, j) && best[j] + 1 == best[cur]) {
                cur = j;
                break;
            }
        }
        chain.push_back(H.carrier()[cur]);
    }
    return chain;
}

} // namespace pf
