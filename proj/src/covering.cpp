#include "patternforge/covering.hpp"

#include "patternforge/detail/embedding_search.hpp"
#include "patternforge/error.hpp"

#include <algorithm>
#include <set>

namespace pf {

TermMap Covering::as_map(const Pattern& source) const {
    TermMap m;
    for (std::size_t i = 0; i < image.size() && i < source.size(); ++i) {
        m.emplace(source.universe()[i], image[i]);
    }
    return m;
}

RegressiveMap::RegressiveMap(TermMap bounds) : bounds_(std::move(bounds)) {
    for (const auto& [x, bound] : bounds_) {
        if (!(bound < x)) {
            throw PreconditionError("regressive map bound " + bound.to_string(true) + " is not below " +
                                    x.to_string(true));
        }
    }
}

std::optional<Ordinal> RegressiveMap::at(const Ordinal& x) const {
    auto it = bounds_.find(x);
    if (it == bounds_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<Ordinal> regressive_domain(const Hierarchy& H, std::span<const Ordinal> range) {
    std::set<Ordinal> out;
    const Ordinal& minimum = H.carrier()[0];
    for (const auto& x : range) {
        if (x.is_indecomposable() && x != minimum) {
            out.insert(x);
        }
    }
    return {out.begin(), out.end()};
}

RegressiveMap RegressiveMap::maximal(const Hierarchy& H, std::span<const Ordinal> range) {
    TermMap m;
    for (const auto& x : regressive_domain(H, range)) {
        auto p = H.carrier().index_of(x);
        if (!p || *p == 0) {
            throw PreconditionError("regressive domain element " + x.to_string(true) + " has no carrier predecessor");
        }
        m.emplace(x, H.carrier()[*p - 1]);
    }
    return RegressiveMap(std::move(m));
}

bool is_covering(std::span<const std::size_t> image, const Pattern& P, const Hierarchy& H) {
    const ClosedSet& u = P.universe();
    const ClosedSet& c = H.carrier();
    if (image.size() != u.size()) {
        return false;
    }
    for (auto y : image) {
        if (y >= c.size()) {
            return false;
        }
    }
    // Arithmetic: the image of each element is the sum of the images of its summands.
    for (std::size_t i = 0; i < u.size(); ++i) {
        const auto& parts = u.summands(i);
        const auto& img_parts = c.summands(image[i]);
        if (parts.size() != img_parts.size()) {
            return false;
        }
        for (std::size_t s = 0; s < parts.size(); ++s) {
            if (image[parts[s]] != img_parts[s]) {
                return false;
            }
        }
    }
    for (std::size_t i = 1; i < u.size(); ++i) {
        if (!(image[i - 1] < image[i])) {
            return false;
        }
    }
    // Closed range.
    const std::set<std::size_t> range(image.begin(), image.end());
    for (auto y : range) {
        const auto& parts = c.summands(y);
        if (parts.size() < 2) {
            continue;
        }
        std::vector<std::size_t> rem(parts.begin(), parts.end() - 1);
        auto r = c.compose(rem);
        if (!r || !range.contains(*r) || !range.contains(parts.back())) {
            return false;
        }
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (P.le1()(i, j) && !H.le1()(image[i], image[j])) {
                return false;
            }
            if (P.le2()(i, j) && !H.le2()(image[i], image[j])) {
                return false;
            }
        }
    }
    return true;
}

bool is_covering(const TermMap& h, const Pattern& P, const Hierarchy& H) {
    std::vector<std::size_t> image;
    for (const auto& x : P.universe()) {
        auto it = h.find(x);
        if (it == h.end()) {
            return false;
        }
        auto p = H.carrier().index_of(it->second);
        if (!p) {
            return false;
        }
        image.push_back(*p);
    }
    return is_covering(image, P, H);
}

namespace {

// Carrier position q such that positions > q hold exactly the elements above `bound`.
std::optional<std::size_t> exclusive_floor(const ClosedSet& c, const Ordinal& bound) {
    auto it = std::upper_bound(c.begin(), c.end(), bound);
    if (it == c.begin()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - c.begin()) - 1;
}

} // namespace

std::vector<Covering> search_coverings(const Pattern& P, const Hierarchy& H, const CoveringConstraints& constraints) {
    const auto src = detail::SourceSpec::of(P.universe(), P.le1(), P.le2());
    const detail::TargetSpec target{H.carrier(), H.le1(), H.le2()};
    auto c = detail::SearchConstraints::none(src.indecomposables.size());
    for (std::size_t r = 0; r < src.indecomposables.size(); ++r) {
        const Ordinal& x = P.universe()[src.indecomposables[r]];
        if (auto it = constraints.fixed.find(x); it != constraints.fixed.end()) {
            auto p = H.carrier().index_of(it->second);
            if (!p) {
                return {};
            }
            c.fixed[r] = *p;
        }
        if (auto it = constraints.lower.find(x); it != constraints.lower.end()) {
            c.lower[r] = exclusive_floor(H.carrier(), it->second);
        }
    }
    std::vector<Covering> out;
    detail::search_embeddings(src, target, c, [&](const std::vector<std::size_t>& img) {
        Covering cov;
        cov.image.reserve(img.size());
        for (auto p : img) {
            cov.image.push_back(H.carrier()[p]);
        }
        out.push_back(std::move(cov));
        return constraints.limit == 0 || out.size() < constraints.limit;
    });
    return out;
}

namespace {

// For a new element b of P+, the least element of P above it.
std::optional<std::size_t> next_in(const Pattern& P, const Ordinal& b) {
    const auto& u = P.universe();
    auto it = std::upper_bound(u.begin(), u.end(), b);
    if (it == u.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - u.begin());
}

void require_extension(const Pattern& Pplus, const Covering& hplus, const Pattern& P, const Covering& h) {
    if (!is_closed_substructure(P, Pplus)) {
        throw PreconditionError("the smaller pattern is not a closed substructure of the larger one");
    }
    if (hplus.image.size() != Pplus.size() || h.image.size() != P.size()) {
        throw PreconditionError("covering does not match its pattern");
    }
    for (std::size_t i = 0; i < P.size(); ++i) {
        const auto j = *Pplus.universe().index_of(P.universe()[i]);
        if (hplus.image[j] != h.image[i]) {
            throw PreconditionError("extended covering disagrees with the original on " +
                                    P.universe()[i].to_string(true));
        }
    }
}

} // namespace

bool extends_above(const Pattern& Pplus, const Covering& hplus, const Pattern& P, const Covering& h,
                   const RegressiveMap& phi) {
    require_extension(Pplus, hplus, P, h);
    const auto& up = Pplus.universe();
    for (auto j : up.indecomposables()) {
        const Ordinal& b = up[j];
        if (P.universe().contains(b)) {
            continue;
        }
        auto a = next_in(P, b);
        if (!a || !P.universe().is_indecomposable(*a)) {
            continue;
        }
        auto bound = phi.at(h.image[*a]);
        if (bound && !(*bound < hplus.image[j])) {
            return false;
        }
    }
    return true;
}

std::optional<Covering> extend_covering(const Pattern& P, const Pattern& Pplus, const Covering& h,
                                        const RegressiveMap& phi, const Hierarchy& H) {
    if (!is_closed_substructure(P, Pplus)) {
        throw PreconditionError("the smaller pattern is not a closed substructure of the larger one");
    }
    if (!is_covering(h.as_map(P), P, H)) {
        throw PreconditionError("the given map is not a covering of the smaller pattern");
    }
    CoveringConstraints c;
    c.limit = 1;
    const auto& up = Pplus.universe();
    for (auto j : up.indecomposables()) {
        const Ordinal& b = up[j];
        if (auto i = P.universe().index_of(b)) {
            c.fixed.emplace(b, h.image[*i]);
            continue;
        }
        auto a = next_in(P, b);
        if (!a || !P.universe().is_indecomposable(*a)) {
            continue;
        }
        if (auto bound = phi.at(h.image[*a])) {
            c.lower.emplace(b, *bound);
        }
    }
    auto found = search_coverings(Pplus, H, c);
    if (found.empty()) {
        return std::nullopt;
    }
    return std::move(found.front());
}

std::vector<RegressiveMap> all_regressive_maps(const Hierarchy& H, std::span<const Ordinal> domain,
                                               std::size_t limit) {
    std::vector<Ordinal> dom(domain.begin(), domain.end());
    std::vector<std::size_t> choices;
    for (const auto& x : dom) {
        auto p = H.carrier().index_of(x);
        if (!p || *p == 0) {
            throw PreconditionError("regressive domain element " + x.to_string(true) + " has no carrier predecessor");
        }
        choices.push_back(*p);
    }
    std::vector<RegressiveMap> out;
    std::vector<std::size_t> pick(dom.size(), 0);
    while (true) {
        TermMap m;
        for (std::size_t i = 0; i < dom.size(); ++i) {
            m.emplace(dom[i], H.carrier()[pick[i]]);
        }
        out.emplace_back(std::move(m));
        if (limit != 0 && out.size() >= limit) {
            break;
        }
        std::size_t i = dom.size();
        while (i > 0 && pick[i - 1] + 1 == choices[i - 1]) {
            pick[i - 1] = 0;
            --i;
        }
        if (i == 0) {
            break;
        }
        ++pick[i - 1];
    }
    return out;
}

CofinalVerdict test_cofinal_validity(const Pattern& P, const Pattern& Pplus, const Hierarchy& H,
                                     const CofinalBudget& budget) {
    if (!is_closed_substructure(P, Pplus)) {
        throw PreconditionError("the premise is not a closed substructure of the conclusion");
    }
    CofinalVerdict v;
    CoveringConstraints all;
    all.limit = budget.max_coverings == 0 ? 0 : budget.max_coverings + 1;
    auto coverings = search_coverings(P, H, all);
    if (budget.max_coverings != 0 && coverings.size() > budget.max_coverings) {
        coverings.resize(budget.max_coverings);
        v.budget_exhausted = true;
    }
    for (const auto& h : coverings) {
        ++v.coverings_checked;
        const RegressiveMap top = RegressiveMap::maximal(H, h.image);
        ++v.phis_checked;
        if (!extend_covering(P, Pplus, h, top, H)) {
            v.valid = false;
            v.counterexample = h;
            v.counterexample_phi = top;
            return v;
        }
        if (budget.max_phis == 0) {
            continue;
        }
        const auto domain = regressive_domain(H, h.image);
        for (const auto& phi : all_regressive_maps(H, domain, budget.max_phis)) {
            ++v.phis_checked;
            if (!extend_covering(P, Pplus, h, phi, H)) {
                v.valid = false;
                v.counterexample = h;
                v.counterexample_phi = phi;
                return v;
            }
        }
    }
    return v;
}

} // namespace pf
