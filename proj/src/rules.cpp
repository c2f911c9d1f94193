#include "patternforge/rules.hpp"

#include "patternforge/error.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace pf {

namespace {

constexpr std::array<std::string_view, 4> kKindNames{"arith_ext", "reflect1_down", "reflect2_up", "generic"};

std::set<Ordinal> indecomposables_of(const ClosedSet& u) {
    std::set<Ordinal> out;
    for (auto i : u.indecomposables()) {
        out.insert(u[i]);
    }
    return out;
}

} // namespace

std::string_view to_string(RuleKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<RuleKind> rule_kind_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == name) {
            return static_cast<RuleKind>(i);
        }
    }
    return std::nullopt;
}

Pattern force_relations(ClosedSet universe, BitMatrix le1, BitMatrix le2) {
    const std::size_t n = universe.size();
    for (std::size_t i = 0; i < n; ++i) {
        le1.set(i, i);
        le2.set(i, i);
    }
    bool changed = true;
    auto add = [&](BitMatrix& m, std::size_t i, std::size_t j) {
        if (!m(i, j)) {
            m.set(i, j);
            changed = true;
        }
    };
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                if (le2(i, j)) {
                    add(le1, i, j);
                }
            }
        }
        for (BitMatrix* m : {&le1, &le2}) {
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t i = 0; i < n; ++i) {
                    if (!(*m)(i, k)) {
                        continue;
                    }
                    for (std::size_t j = 0; j < n; ++j) {
                        if ((*m)(k, j)) {
                            add(*m, i, j);
                        }
                    }
                }
            }
        }
        for (int k = 1; k <= 2; ++k) {
            BitMatrix& upper = k == 1 ? le1 : le2;
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t c = a + 1; c < n; ++c) {
                    if (!upper(a, c)) {
                        continue;
                    }
                    for (std::size_t b = a + 1; b < c; ++b) {
                        if (k == 1 || (le1(a, b) && le1(b, c))) {
                            add(upper, a, b);
                        }
                    }
                }
            }
        }
    }
    return Pattern::from_matrices(std::move(universe), std::move(le1), std::move(le2));
}

namespace {

// P's relations carried into `universe` (a superset of |P|), plus extra seed pairs.
Pattern extend_relations(const Pattern& P, const ClosedSet& universe,
                         const std::vector<std::pair<OrdinalPair, int>>& extra = {}) {
    BitMatrix le1(universe.size());
    BitMatrix le2(universe.size());
    const auto& pu = P.universe();
    for (std::size_t i = 0; i < P.size(); ++i) {
        for (std::size_t j = 0; j < P.size(); ++j) {
            const auto ui = *universe.index_of(pu[i]);
            const auto uj = *universe.index_of(pu[j]);
            le1.set(ui, uj, P.le1()(i, j));
            le2.set(ui, uj, P.le2()(i, j));
        }
    }
    for (const auto& [pair, k] : extra) {
        (k == 1 ? le1 : le2).set(*universe.index_of(pair.first), *universe.index_of(pair.second));
    }
    return force_relations(universe, std::move(le1), std::move(le2));
}

RuleInstance checked(const Pattern& P, Pattern Pplus, RuleKind kind) {
    if (!is_closed_substructure(P, Pplus)) {
        throw PreconditionError("forced relations change the premise, so it is not a closed substructure");
    }
    return {P, std::move(Pplus), kind};
}

} // namespace

RuleInstance make_arith_ext(const Pattern& P, std::span<const Ordinal> new_terms) {
    std::vector<Ordinal> all = P.universe().elements();
    all.insert(all.end(), new_terms.begin(), new_terms.end());
    const ClosedSet universe = ClosedSet::closure(all);
    const auto old = indecomposables_of(P.universe());
    for (auto i : universe.indecomposables()) {
        if (!old.contains(universe[i])) {
            throw PreconditionError("new indecomposable " + universe[i].to_string(true) +
                                    " is not in the premise universe");
        }
    }
    return checked(P, extend_relations(P, universe), RuleKind::arith_ext);
}

RuleInstance make_reflect1_down(const Pattern& P, const Ordinal& a, const Ordinal& b, std::span<const Ordinal> X,
                                TermMap* copy) {
    const auto& u = P.universe();
    const auto ia = u.index_of(a);
    const auto ib = u.index_of(b);
    if (!ia || !ib) {
        throw PreconditionError("reflection endpoints must be universe elements");
    }
    if (!(a < b) || !P.le1()(*ia, *ib)) {
        throw PreconditionError("reflection needs a strict le1 pair " + a.to_string(true) + " < " + b.to_string(true));
    }
    for (const auto& x : X) {
        if (!u.contains(x) || x < a || b < x) {
            throw PreconditionError("reflected element " + x.to_string(true) + " is not in the universe between " +
                                    a.to_string(true) + " and " + b.to_string(true));
        }
    }
    if (copy != nullptr) {
        copy->clear();
    }
    if (X.empty()) {
        return {P, P, RuleKind::reflect1_down};
    }
    const std::vector<Ordinal> below(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(*ia));
    std::vector<Ordinal> gen = below;
    gen.insert(gen.end(), X.begin(), X.end());
    const ClosedSet lower_and_x = ClosedSet::closure(gen);

    // Indecomposables below a stay; the others get fresh images in increasing order.
    TermMap indec_map;
    std::vector<Ordinal> moving;
    for (auto i : lower_and_x.indecomposables()) {
        const Ordinal& y = lower_and_x[i];
        if (y < a) {
            indec_map.emplace(y, y);
        } else {
            moving.push_back(y);
        }
    }
    const auto taken = indecomposables_of(u);
    // Least exponent gamma with every element below a under w^gamma.
    Ordinal gamma;
    if (!below.empty() && !below.back().is_zero()) {
        gamma = below.back().exponents().front() + Ordinal::one();
    }
    for (const auto& y : moving) {
        Ordinal fresh = Ordinal::omega_power(gamma);
        while (taken.contains(fresh)) {
            gamma = gamma + Ordinal::one();
            fresh = Ordinal::omega_power(gamma);
        }
        if (!(fresh < b)) {
            throw PreconditionError("no fresh indecomposable available below " + b.to_string(true));
        }
        indec_map.emplace(y, fresh);
        gamma = gamma + Ordinal::one();
    }
    const TermMap c = induced_embedding(indec_map, lower_and_x);
    std::vector<Ordinal> elems = u.elements();
    for (const auto& [x, y] : c) {
        if (!(y < b)) {
            throw PreconditionError("copy of " + x.to_string(true) + " does not fit below " + b.to_string(true));
        }
        elems.push_back(y);
    }
    const ClosedSet universe = ClosedSet::closure(elems);
    std::vector<std::pair<OrdinalPair, int>> extra;
    const auto& lu = lower_and_x;
    for (std::size_t i = 0; i < lu.size(); ++i) {
        for (std::size_t j = i + 1; j < lu.size(); ++j) {
            const auto pi = *u.index_of(lu[i]);
            const auto pj = *u.index_of(lu[j]);
            for (int k = 1; k <= 2; ++k) {
                if (P.relation(k)(pi, pj)) {
                    extra.push_back({{c.at(lu[i]), c.at(lu[j])}, k});
                }
            }
        }
    }
    if (copy != nullptr) {
        *copy = c;
    }
    return checked(P, extend_relations(P, universe, extra), RuleKind::reflect1_down);
}

RuleInstance make_generic(const Pattern& P, const Pattern& Pplus, RuleKind kind) {
    if (!is_closed_substructure(P, Pplus)) {
        throw PreconditionError("premise is not a closed substructure of the conclusion");
    }
    return {P, Pplus, kind};
}

} // namespace pf
