#include "patternforge/hierarchy.hpp"

#include "patternforge/detail/embedding_search.hpp"
#include "patternforge/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace pf {

using detail::npos;
using detail::SearchConstraints;
using detail::SourceSpec;
using detail::TargetSpec;

Hierarchy Hierarchy::from_parts(ClosedSet carrier, Ordinal top, BitMatrix le1, BitMatrix le2, BuildLog log,
                                BuildOptions options) {
    if (le1.size() != carrier.size() || le2.size() != carrier.size()) {
        throw PreconditionError("relation matrix size does not match the carrier");
    }
    return Hierarchy(std::move(carrier), std::move(top), std::move(le1), std::move(le2), std::move(log), options);
}

Pattern Hierarchy::restrict(std::span<const std::size_t> positions) const {
    std::vector<std::size_t> pos(positions.begin(), positions.end());
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    std::vector<Ordinal> elems;
    for (auto p : pos) {
        elems.push_back(carrier_[p]);
    }
    BitMatrix r1(pos.size());
    BitMatrix r2(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t j = 0; j < pos.size(); ++j) {
            r1.set(i, j, le1_(pos[i], pos[j]));
            r2.set(i, j, le2_(pos[i], pos[j]));
        }
    }
    return Pattern::from_matrices(ClosedSet::from_elements(std::move(elems)), std::move(r1), std::move(r2));
}

namespace {

// Calls fn(subset) for every k-subset of [0, n) in lexicographic order until fn returns false.
template <typename Fn>
bool for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) {
        idx[i] = i;
    }
    if (k > n) {
        return true;
    }
    while (true) {
        if (!fn(static_cast<const std::vector<std::size_t>&>(idx))) {
            return false;
        }
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) {
            --i;
        }
        if (i == 0) {
            return true;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

// Closed sets the universal player may propose: all of [0, bound) when the width
// is unbounded, otherwise closures of `base` plus `width` generators below bound.
std::vector<std::vector<std::size_t>> game_moves(const ClosedSet& carrier, std::size_t bound, std::size_t width,
                                                 std::span<const std::size_t> base) {
    std::vector<std::vector<std::size_t>> out;
    if (width == 0) {
        std::vector<std::size_t> all(bound);
        for (std::size_t i = 0; i < bound; ++i) {
            all[i] = i;
        }
        out.push_back(std::move(all));
        return out;
    }
    std::set<std::vector<std::size_t>> seen;
    const std::size_t k = std::min(width, bound);
    for_each_combination(bound, k, [&](const std::vector<std::size_t>& gens) {
        std::vector<std::size_t> g(base.begin(), base.end());
        g.insert(g.end(), gens.begin(), gens.end());
        auto x = detail::closure_in(carrier, g);
        if (seen.insert(x).second) {
            out.push_back(std::move(x));
        }
        return true;
    });
    return out;
}

// Second round: for every closed Z between h[X] and [0, a) there is a back-map
// into [0, b) sending each h(x) to x.
bool back_game(const ClosedSet& carrier, const BitMatrix& le1, const BitMatrix& le2, std::size_t a, std::size_t b,
               const std::vector<std::size_t>& X, const std::vector<std::size_t>& h, const BuildOptions& options) {
    std::map<std::size_t, std::size_t> inverse;
    std::vector<std::size_t> hx;
    for (std::size_t i = 0; i < X.size(); ++i) {
        inverse.emplace(h[i], X[i]);
        hx.push_back(h[i]);
    }
    const TargetSpec target{carrier, le1, le2};
    for (const auto& Z : game_moves(carrier, a, options.width, hx)) {
        SourceSpec src = SourceSpec::of_subset(carrier, Z, le1, le2);
        SearchConstraints c = SearchConstraints::none(src.indecomposables.size());
        for (std::size_t r = 0; r < src.indecomposables.size(); ++r) {
            auto it = inverse.find(Z[src.indecomposables[r]]);
            if (it != inverse.end()) {
                c.fixed[r] = it->second;
            }
        }
        c.element_upper = b;
        if (!detail::first_embedding(src, target, c)) {
            return false;
        }
    }
    return true;
}

} // namespace

bool game_holds(const ClosedSet& carrier, const BitMatrix& le1, const BitMatrix& le2, int k, std::size_t a,
                std::size_t b, const BuildOptions& options, std::optional<std::size_t> threshold) {
    if (a == b) {
        return true;
    }
    if (a > b) {
        return false;
    }
    const TargetSpec target{carrier, le1, le2};
    for (const auto& X : game_moves(carrier, b, options.width, {})) {
        SourceSpec src = SourceSpec::of_subset(carrier, X, le1, le2);
        SearchConstraints c = SearchConstraints::none(src.indecomposables.size());
        for (std::size_t r = 0; r < src.indecomposables.size(); ++r) {
            const std::size_t p = X[src.indecomposables[r]];
            if (p < a) {
                c.fixed[r] = p;
            } else if (threshold) {
                c.lower[r] = *threshold;
            }
        }
        c.element_upper = a;
        bool found = false;
        detail::search_embeddings(src, target, c, [&](const std::vector<std::size_t>& h) {
            found = k == 1 || back_game(carrier, le1, le2, a, b, X, h, options);
            return !found;
        });
        if (!found) {
            return false;
        }
    }
    return true;
}

namespace {

bool structural_violation(const ClosedSet& carrier, const BitMatrix& le1, const BitMatrix& le2, int k, std::size_t a,
                          std::size_t b) {
    const BitMatrix& r = k == 1 ? le1 : le2;
    const std::size_t n = carrier.size();
    if (k == 2) {
        if (!le1(a, b)) {
            return true;
        }
        if (!carrier.is_indecomposable(a) || !carrier.is_indecomposable(b)) {
            return true;
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
        if ((r(b, c) && !r(a, c)) || (r(c, a) && !r(c, b))) {
            return true;
        }
    }
    for (std::size_t m = a + 1; m < b; ++m) {
        const bool lower = k == 1 || (le1(a, m) && le1(m, b));
        if (lower && !r(a, m)) {
            return true;
        }
    }
    return false;
}

} // namespace

std::size_t pruning_round(const ClosedSet& carrier, BitMatrix& le1, BitMatrix& le2, const BuildOptions& options,
                          RoundLog* log) {
    const std::size_t n = carrier.size();
    const BitMatrix snap1 = le1;
    const BitMatrix snap2 = le2;
    RoundLog local;
    for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t a = 0; a < b; ++a) {
            if (le1(a, b) && !game_holds(carrier, snap1, snap2, 1, a, b, options)) {
                le1.set(a, b, false);
                le2.set(a, b, false);
                ++local.game_pruned_le1;
            } else if (le2(a, b) && !game_holds(carrier, snap1, snap2, 2, a, b, options)) {
                le2.set(a, b, false);
                ++local.game_pruned_le2;
            }
        }
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t a = 0; a < b; ++a) {
                for (int k = 1; k <= 2; ++k) {
                    BitMatrix& r = k == 1 ? le1 : le2;
                    if (r(a, b) && structural_violation(carrier, le1, le2, k, a, b)) {
                        r.set(a, b, false);
                        if (k == 1) {
                            le2.set(a, b, false);
                        }
                        ++local.structural_pruned;
                        changed = true;
                    }
                }
            }
        }
    }
    if (log != nullptr) {
        local.round = log->round;
        *log = local;
    }
    return local.total();
}

Ordinal default_top(const ClosedSet& carrier) {
    const Ordinal& max = carrier.elements().back();
    if (max.is_zero()) {
        return Ordinal::one();
    }
    return Ordinal::omega_power(add(max.exponents().front(), Ordinal::one()));
}

Hierarchy build_hierarchy(const ClosedSet& carrier, const Ordinal& top, const BuildOptions& options) {
    if (!top.is_indecomposable()) {
        throw PreconditionError("top " + top.to_string(true) + " is not indecomposable");
    }
    if (top < carrier.elements().back()) {
        throw PreconditionError("top " + top.to_string(true) + " lies below the carrier element " +
                                carrier.elements().back().to_string(true));
    }
    const std::size_t n = carrier.size();
    BitMatrix le1(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            le1.set(a, b);
        }
    }
    BitMatrix le2 = le1;
    BuildLog log;
    while (true) {
        RoundLog round;
        round.round = log.rounds.size() + 1;
        const std::size_t pruned = pruning_round(carrier, le1, le2, options, &round);
        log.rounds.push_back(round);
        if (pruned == 0) {
            break;
        }
        if (log.rounds.size() > n * n) {
            throw std::logic_error("pruning did not stabilise within |carrier|^2 rounds");
        }
    }
    return Hierarchy::from_parts(carrier, top, std::move(le1), std::move(le2), std::move(log), options);
}

Hierarchy build_hierarchy(std::span<const Ordinal> carrier, const Ordinal& top, const BuildOptions& options) {
    return build_hierarchy(ClosedSet::from_elements(std::vector<Ordinal>(carrier.begin(), carrier.end())), top,
                           options);
}

bool le_inf(const Hierarchy& H, int k, const Ordinal& a, const Ordinal& b, std::size_t window) {
    auto ia = H.carrier().index_of(a);
    auto ib = H.carrier().index_of(b);
    if (!ia || !ib) {
        throw PreconditionError("le_inf arguments must be carrier elements");
    }
    if (*ia > *ib) {
        throw PreconditionError("le_inf needs a <= b");
    }
    if (*ia == *ib) {
        return true;
    }
    if (!game_holds(H.carrier(), H.le1(), H.le2(), k, *ia, *ib, H.options())) {
        return false;
    }
    const std::size_t checked = *ia > window ? *ia - window : 0;
    for (std::size_t t = 0; t < checked; ++t) {
        if (!game_holds(H.carrier(), H.le1(), H.le2(), k, *ia, *ib, H.options(), t)) {
            return false;
        }
    }
    return true;
}

AxiomReport check_hierarchy_axioms(const Hierarchy& H, std::size_t window) {
    AxiomReport rep;
    const ClosedSet& c = H.carrier();
    rep.partial_orders = check_order_axioms(c.elements(), H.le1(), H.le2());
    rep.respect = check_respect(c.elements(), H.le1(), H.le2());
    if (!H.top().is_indecomposable()) {
        rep.top_detail = "top " + H.top().to_string(true) + " is not indecomposable";
    } else if (H.top() < c.elements().back()) {
        rep.top_detail = "top " + H.top().to_string(true) + " lies below " + c.elements().back().to_string(true);
    } else {
        rep.top_ok = true;
        rep.top_detail = "top " + H.top().to_string(true) + " is indecomposable and bounds the carrier";
    }
    rep.window = window;
    const std::size_t n = c.size();
    for (int k = 1; k <= 2; ++k) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t a = 0; a < b; ++a) {
                if (!H.relation(k)(a, b)) {
                    continue;
                }
                ++rep.inf_pairs_checked;
                if (!le_inf(H, k, c[a], c[b], window)) {
                    rep.inf_failures.push_back({k, c[a], c[b]});
                }
            }
        }
    }
    for (std::size_t b = 0; b < n; ++b) {
        if (!c[b].is_limit()) {
            continue;
        }
        for (std::size_t a = 0; a < b; ++a) {
            bool below = true;
            for (std::size_t x = a; x < b && below; ++x) {
                below = H.le1()(a, x);
            }
            if (below && !H.le1()(a, b)) {
                rep.limit_continuity_failures.emplace_back(c[a], c[b]);
            }
        }
    }
    return rep;
}

std::string AxiomReport::to_text() const {
    std::string out;
    out += "(b) partial orders and inclusions: " + std::string(partial_orders.empty() ? "ok" : "FAILED") + "\n";
    for (const auto& v : partial_orders) {
        out += "    " + v.to_string() + "\n";
    }
    out += "(c) respect: " + std::string(respect.empty() ? "ok" : "FAILED") + "\n";
    for (const auto& v : respect) {
        out += "    " + v.to_string() + "\n";
    }
    out += "(d) top: " + std::string(top_ok ? "ok" : "FAILED") + " (" + top_detail + ")\n";
    out += "(a) cofinal games, window " + std::to_string(window) + ": " + std::to_string(inf_pairs_checked) +
           " strict pairs, " + std::to_string(inf_failures.size()) + " failing\n";
    for (const auto& f : inf_failures) {
        out += "    le" + std::to_string(f.k) + " " + f.a.to_string(true) + " " + f.b.to_string(true) + "\n";
    }
    out += "limit continuity: " + std::to_string(limit_continuity_failures.size()) + " failing\n";
    for (const auto& [a, b] : limit_continuity_failures) {
        out += "    " + a.to_string(true) + " " + b.to_string(true) + "\n";
    }
    return out;
}

} // namespace pf
