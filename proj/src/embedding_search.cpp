#include "patternforge/detail/embedding_search.hpp"

#include <algorithm>

namespace pf::detail {

SourceSpec SourceSpec::of(const ClosedSet& set, const BitMatrix& le1, const BitMatrix& le2) {
    std::vector<std::size_t> all(set.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        all[i] = i;
    }
    return of_subset(set, all, le1, le2);
}

SourceSpec SourceSpec::of_subset(const ClosedSet& carrier, std::span<const std::size_t> subset, const BitMatrix& le1,
                                 const BitMatrix& le2) {
    SourceSpec s;
    std::vector<std::size_t> rank_of(carrier.size(), npos);
    for (auto p : subset) {
        if (carrier.is_indecomposable(p)) {
            rank_of[p] = s.indecomposables.size();
            s.indecomposables.push_back(s.summand_ranks.size());
        }
        s.summand_ranks.emplace_back();
    }
    s.le1 = BitMatrix(subset.size());
    s.le2 = BitMatrix(subset.size());
    for (std::size_t e = 0; e < subset.size(); ++e) {
        for (auto sp : carrier.summands(subset[e])) {
            s.summand_ranks[e].push_back(rank_of[sp]);
        }
        for (std::size_t f = 0; f < subset.size(); ++f) {
            s.le1.set(e, f, le1(subset[e], subset[f]));
            s.le2.set(e, f, le2(subset[e], subset[f]));
        }
    }
    return s;
}

namespace {

class Search {
  public:
    Search(const SourceSpec& s, const TargetSpec& t, const SearchConstraints& c, const EmbeddingVisitor& v)
        : src_(s), tgt_(t), con_(c), visit_(v), image_(s.size(), npos), indec_image_(s.indecomposables.size()),
          by_lead_(s.indecomposables.size()) {
        for (std::size_t e = 0; e < s.size(); ++e) {
            if (s.summand_ranks[e].empty()) {
                roots_.push_back(e);
            } else {
                by_lead_[s.summand_ranks[e].front()].push_back(e);
            }
        }
    }

    bool run() {
        for (auto e : roots_) {
            if (!place(e, 0)) {
                return true;
            }
        }
        return descend(0);
    }

  private:
    // Assigns `img` to element e after checking the bound and forward preservation.
    bool place(std::size_t e, std::size_t img) {
        if (con_.element_upper && img >= *con_.element_upper) {
            return false;
        }
        image_[e] = img;
        for (auto f : assigned_) {
            if (!preserved(e, f) || !preserved(f, e)) {
                image_[e] = npos;
                return false;
            }
        }
        if (!preserved(e, e)) {
            image_[e] = npos;
            return false;
        }
        assigned_.push_back(e);
        return true;
    }

    bool preserved(std::size_t a, std::size_t b) const {
        const std::size_t ia = image_[a];
        const std::size_t ib = image_[b];
        return (!src_.le1(a, b) || tgt_.le1(ia, ib)) && (!src_.le2(a, b) || tgt_.le2(ia, ib));
    }

    void unplace_to(std::size_t mark) {
        while (assigned_.size() > mark) {
            image_[assigned_.back()] = npos;
            assigned_.pop_back();
        }
    }

    // Returns false once the visitor asks to stop.
    bool descend(std::size_t rank) {
        if (rank == indec_image_.size()) {
            return visit_(image_);
        }
        const auto& targets = tgt_.carrier.indecomposables();
        std::size_t lo = 0;
        if (rank > 0) {
            lo = indec_image_[rank - 1] + 1;
        }
        if (con_.lower[rank]) {
            lo = std::max(lo, *con_.lower[rank] + 1);
        }
        auto it = std::lower_bound(targets.begin(), targets.end(), lo);
        for (; it != targets.end(); ++it) {
            const std::size_t t = *it;
            if (con_.fixed[rank] && t != *con_.fixed[rank]) {
                if (t > *con_.fixed[rank]) {
                    break;
                }
                continue;
            }
            if (con_.element_upper && t >= *con_.element_upper) {
                break;
            }
            indec_image_[rank] = t;
            const std::size_t mark = assigned_.size();
            bool ok = true;
            for (auto e : by_lead_[rank]) {
                std::vector<std::size_t> parts;
                parts.reserve(src_.summand_ranks[e].size());
                for (auto r : src_.summand_ranks[e]) {
                    parts.push_back(indec_image_[r]);
                }
                auto img = tgt_.carrier.compose(parts);
                if (!img || !place(e, *img)) {
                    ok = false;
                    break;
                }
            }
            if (ok && !descend(rank + 1)) {
                return false;
            }
            unplace_to(mark);
        }
        return true;
    }

    const SourceSpec& src_;
    const TargetSpec& tgt_;
    const SearchConstraints& con_;
    const EmbeddingVisitor& visit_;
    std::vector<std::size_t> image_;
    std::vector<std::size_t> indec_image_;
    std::vector<std::vector<std::size_t>> by_lead_;
    std::vector<std::size_t> roots_;
    std::vector<std::size_t> assigned_;
};

} // namespace

bool search_embeddings(const SourceSpec& source, const TargetSpec& target, const SearchConstraints& constraints,
                       const EmbeddingVisitor& visit) {
    return Search(source, target, constraints, visit).run();
}

std::optional<std::vector<std::size_t>> first_embedding(const SourceSpec& source, const TargetSpec& target,
                                                        const SearchConstraints& constraints) {
    std::optional<std::vector<std::size_t>> found;
    search_embeddings(source, target, constraints, [&](const std::vector<std::size_t>& img) {
        found = img;
        return false;
    });
    return found;
}

std::vector<std::size_t> closure_in(const ClosedSet& carrier, std::span<const std::size_t> generators) {
    std::vector<char> in(carrier.size(), 0);
    in[0] = 1;
    for (auto g : generators) {
        in[g] = 1;
        // Summands of an element in a closed set are exactly what its closure adds.
        std::vector<std::size_t> parts = carrier.summands(g);
        std::vector<std::size_t> prefix;
        for (auto p : parts) {
            prefix.push_back(p);
            in[p] = 1;
            in[*carrier.compose(prefix)] = 1;
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (in[i] != 0) {
            out.push_back(i);
        }
    }
    return out;
}

} // namespace pf::detail
