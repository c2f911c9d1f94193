#include "patternforge/pattern.hpp"

#include "patternforge/error.hpp"

#include <algorithm>
#include <set>

namespace pf {

std::string Violation::to_string() const {
    std::string out = clause + ": " + description;
    if (!witness.empty()) {
        out += " [";
        for (std::size_t i = 0; i < witness.size(); ++i) {
            out += (i == 0 ? "" : ", ") + witness[i].to_string(true);
        }
        out += "]";
    }
    return out;
}

namespace {

const char* name_of(int k) { return k == 1 ? "le1" : "le2"; }

} // namespace

std::vector<Violation> check_order_axioms(std::span<const Ordinal> u, const BitMatrix& le1, const BitMatrix& le2) {
    std::vector<Violation> out;
    const std::size_t n = u.size();
    for (int k = 1; k <= 2; ++k) {
        const BitMatrix& r = k == 1 ? le1 : le2;
        const std::string name = name_of(k);
        for (std::size_t a = 0; a < n; ++a) {
            if (!r(a, a)) {
                out.push_back({name + "-not-reflexive", name + " is not reflexive", {u[a]}});
            }
        }
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                if (r(a, b) && r(b, a)) {
                    out.push_back({name + "-not-antisymmetric", name + " is not antisymmetric", {u[a], u[b]}});
                }
            }
        }
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (a == b || !r(a, b)) {
                    continue;
                }
                for (std::size_t c = 0; c < n; ++c) {
                    if (c != b && r(b, c) && !r(a, c)) {
                        out.push_back({name + "-not-transitive", name + " is not transitive", {u[a], u[b], u[c]}});
                    }
                }
            }
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (le1(a, b) && a > b) {
                out.push_back({"le1-not-subset-le0", "le1 ⊄ le0", {u[a], u[b]}});
            }
            if (le2(a, b) && !le1(a, b)) {
                out.push_back({"le2-not-subset-le1", "le2 ⊄ le1", {u[a], u[b]}});
            }
        }
    }
    return out;
}

std::vector<Violation> check_respect(std::span<const Ordinal> u, const BitMatrix& le1, const BitMatrix& le2) {
    std::vector<Violation> out;
    const std::size_t n = u.size();
    for (int k = 1; k <= 2; ++k) {
        const BitMatrix& upper = k == 1 ? le1 : le2;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t c = a; c < n; ++c) {
                if (!upper(a, c)) {
                    continue;
                }
                for (std::size_t b = a; b <= c; ++b) {
                    const bool lower_ab = k == 1 ? true : le1(a, b);
                    const bool lower_bc = k == 1 ? true : le1(b, c);
                    if (lower_ab && lower_bc && !upper(a, b)) {
                        out.push_back({std::string("respect-k") + char('0' + k),
                                       std::string(name_of(k)) + " does not respect " + (k == 1 ? "le0" : "le1"),
                                       {u[a], u[b], u[c]}});
                    }
                }
            }
        }
    }
    return out;
}

std::vector<Violation> validate_pattern(const CandidateStructure& s) {
    std::vector<Violation> out;
    std::vector<Ordinal> u = s.universe;
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());

    const std::set<Ordinal> members(u.begin(), u.end());
    if (!members.contains(Ordinal{})) {
        out.push_back({"universe-not-closed", "universe does not contain 0", {}});
    }
    for (const auto& x : u) {
        if (x.summand_count() >= 2 && (!members.contains(x.remainder()) || !members.contains(x.last_summand()))) {
            out.push_back({"universe-not-closed", "universe misses a summand split of an element", {x}});
        }
    }

    const std::size_t n = u.size();
    auto pos = [&](const Ordinal& x) -> std::optional<std::size_t> {
        auto it = std::lower_bound(u.begin(), u.end(), x);
        if (it == u.end() || *it != x) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - u.begin());
    };
    // Reflexive pairs are implicit in candidates.
    BitMatrix le1 = BitMatrix::identity(n);
    BitMatrix le2 = BitMatrix::identity(n);
    for (int k = 1; k <= 2; ++k) {
        BitMatrix& r = k == 1 ? le1 : le2;
        for (const auto& [a, b] : k == 1 ? s.le1 : s.le2) {
            auto ia = pos(a);
            auto ib = pos(b);
            if (!ia || !ib) {
                out.push_back({"unknown-element", std::string(name_of(k)) + " pair outside the universe", {a, b}});
                continue;
            }
            r.set(*ia, *ib);
        }
    }
    auto order = check_order_axioms(u, le1, le2);
    auto respect = check_respect(u, le1, le2);
    out.insert(out.end(), order.begin(), order.end());
    out.insert(out.end(), respect.begin(), respect.end());
    return out;
}

Pattern::Pattern() : Pattern(ClosedSet{}, BitMatrix::identity(1), BitMatrix::identity(1)) {}

Pattern Pattern::from_matrices(ClosedSet universe, BitMatrix le1, BitMatrix le2) {
    if (le1.size() != universe.size() || le2.size() != universe.size()) {
        throw PreconditionError("relation matrix size does not match the universe");
    }
    auto v = check_order_axioms(universe.elements(), le1, le2);
    auto r = check_respect(universe.elements(), le1, le2);
    v.insert(v.end(), r.begin(), r.end());
    if (!v.empty()) {
        throw PreconditionError("not a pattern: " + v.front().to_string());
    }
    return Pattern(std::move(universe), std::move(le1), std::move(le2));
}

Pattern Pattern::from_candidate(const CandidateStructure& s) {
    auto v = validate_pattern(s);
    if (!v.empty()) {
        throw PreconditionError("not a pattern: " + v.front().to_string());
    }
    ClosedSet u = ClosedSet::from_elements(s.universe);
    BitMatrix le1 = BitMatrix::identity(u.size());
    BitMatrix le2 = BitMatrix::identity(u.size());
    for (const auto& [a, b] : s.le1) {
        le1.set(*u.index_of(a), *u.index_of(b));
    }
    for (const auto& [a, b] : s.le2) {
        le2.set(*u.index_of(a), *u.index_of(b));
    }
    return Pattern(std::move(u), std::move(le1), std::move(le2));
}

Pattern Pattern::trivial(ClosedSet universe) {
    const std::size_t n = universe.size();
    return Pattern(std::move(universe), BitMatrix::identity(n), BitMatrix::identity(n));
}

CandidateStructure Pattern::to_candidate() const {
    CandidateStructure s;
    s.universe = universe_.elements();
    for (std::size_t a = 0; a < size(); ++a) {
        for (std::size_t b = 0; b < size(); ++b) {
            if (a == b) {
                continue;
            }
            if (le1_(a, b)) {
                s.le1.emplace_back(universe_[a], universe_[b]);
            }
            if (le2_(a, b)) {
                s.le2.emplace_back(universe_[a], universe_[b]);
            }
        }
    }
    return s;
}

Pattern Pattern::restrict(std::span<const std::size_t> positions) const {
    std::vector<std::size_t> pos(positions.begin(), positions.end());
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    std::vector<Ordinal> elems;
    for (auto p : pos) {
        elems.push_back(universe_[p]);
    }
    ClosedSet u = ClosedSet::from_elements(std::move(elems));
    BitMatrix r1(pos.size());
    BitMatrix r2(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t j = 0; j < pos.size(); ++j) {
            r1.set(i, j, le1_(pos[i], pos[j]));
            r2.set(i, j, le2_(pos[i], pos[j]));
        }
    }
    return Pattern(std::move(u), std::move(r1), std::move(r2));
}

bool is_closed_substructure(const Pattern& Q, const Pattern& P) {
    const ClosedSet& uq = Q.universe();
    const ClosedSet& up = P.universe();
    if (!uq.is_subset_of(up)) {
        return false;
    }
    std::vector<std::size_t> at(uq.size());
    for (std::size_t i = 0; i < uq.size(); ++i) {
        at[i] = *up.index_of(uq[i]);
    }
    for (std::size_t i = 0; i < uq.size(); ++i) {
        for (std::size_t j = 0; j < uq.size(); ++j) {
            if (Q.le1()(i, j) != P.le1()(at[i], at[j]) || Q.le2()(i, j) != P.le2()(at[i], at[j])) {
                return false;
            }
        }
    }
    return true;
}

std::optional<TermMap> find_isomorphism(const Pattern& P, const Pattern& Q) {
    const ClosedSet& up = P.universe();
    const ClosedSet& uq = Q.universe();
    if (up.size() != uq.size() || up.indecomposables().size() != uq.indecomposables().size()) {
        return std::nullopt;
    }
    TermMap indec;
    for (std::size_t r = 0; r < up.indecomposables().size(); ++r) {
        indec.emplace(up[up.indecomposables()[r]], uq[uq.indecomposables()[r]]);
    }
    TermMap iso = induced_embedding(indec, up);
    std::vector<std::size_t> at(up.size());
    for (std::size_t i = 0; i < up.size(); ++i) {
        auto j = uq.index_of(iso.at(up[i]));
        if (!j) {
            return std::nullopt;
        }
        at[i] = *j;
    }
    // Strictly increasing and equal sizes, so `at` is a bijection.
    for (std::size_t i = 0; i < up.size(); ++i) {
        for (std::size_t j = 0; j < up.size(); ++j) {
            if (P.le1()(i, j) != Q.le1()(at[i], at[j]) || P.le2()(i, j) != Q.le2()(at[i], at[j])) {
                return std::nullopt;
            }
        }
    }
    return iso;
}

bool PointwiseWitness::le() const {
    return std::all_of(comparisons.begin(), comparisons.end(), [](Order o) { return o != Order::GT; });
}

PointwiseWitness pointwise_compare(std::span<const Ordinal> X, std::span<const Ordinal> Y) {
    std::vector<Ordinal> xs(X.begin(), X.end());
    std::vector<Ordinal> ys(Y.begin(), Y.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    if (xs.size() != ys.size()) {
        throw PreconditionError("pointwise comparison needs sets of equal cardinality (" + std::to_string(xs.size()) +
                                " vs " + std::to_string(ys.size()) + ")");
    }
    PointwiseWitness w;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        w.comparisons.push_back(compare(xs[i], ys[i]));
        w.pairing.emplace_back(std::move(xs[i]), std::move(ys[i]));
    }
    return w;
}

bool pointwise_le(std::span<const Ordinal> X, std::span<const Ordinal> Y) { return pointwise_compare(X, Y).le(); }

bool covers(const Pattern& S, const Pattern& T) {
    if (!(S.universe() == T.universe())) {
        throw PreconditionError("covers needs patterns on the same universe");
    }
    return T.le1().is_subset_of(S.le1()) && T.le2().is_subset_of(S.le2());
}

} // namespace pf
