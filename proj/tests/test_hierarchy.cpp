#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "patternforge/detail/embedding_search.hpp"
#include "patternforge/error.hpp"

using namespace pft;

namespace {

std::size_t strict_pairs(const BitMatrix& m) { return m.strict_count(); }

// Brute-force one-round game for a single move X (carrier positions): some map
// into [0, a) that fixes indecomposables below a, is arithmetic, strictly
// increasing and preserves H's relations forward.
bool naive_first_round(const Hierarchy& H, std::size_t a, const std::vector<std::size_t>& X) {
    const auto& c = H.carrier();
    bool found = false;
    for_each_map(X.size(), a, [&](const std::vector<std::size_t>& m) {
        if (found) {
            return;
        }
        std::map<Ordinal, Ordinal> h;
        for (std::size_t i = 0; i < X.size(); ++i) {
            h[c[X[i]]] = c[m[i]];
        }
        for (std::size_t i = 0; i < X.size(); ++i) {
            const Ordinal& x = c[X[i]];
            if (x.is_indecomposable()) {
                if (!h[x].is_indecomposable() || (X[i] < a && m[i] != X[i])) {
                    return;
                }
            }
            Ordinal sum;
            for (const auto& s : x.summands()) {
                sum = sum + h[s];
            }
            if (sum != h[x]) {
                return;
            }
            for (std::size_t j = 0; j < X.size(); ++j) {
                if (X[i] < X[j] && !(m[i] < m[j])) {
                    return;
                }
                if ((H.le1()(X[i], X[j]) && !H.le1()(m[i], m[j])) || (H.le2()(X[i], X[j]) && !H.le2()(m[i], m[j]))) {
                    return;
                }
            }
        }
        found = true;
    });
    return found;
}

} // namespace

TEST_CASE("build examples") {
    const Hierarchy h0 = build_hierarchy(ClosedSet(), O("1"));
    CHECK(h0.le1() == BitMatrix::identity(1));
    CHECK(h0.le2() == BitMatrix::identity(1));

    const Hierarchy h1 = build_hierarchy(ClosedSet::from_elements(Os({"0", "1"})), O("w"));
    CHECK_FALSE(h1.le1()(0, 1));
    CHECK(h1.le1()(0, 0));

    const Hierarchy h3 = build_hierarchy(ClosedSet::closure({O("w+w")}), O("w^(2)"));
    std::string diag;
    CHECK_MESSAGE(matches_golden("hierarchy_closure_w2.hier", write_hierarchy(h3), &diag), diag);
    // Independent reason: the move [0, b) contains a, so it cannot fit inside [0, a).
    CHECK(strict_pairs(h3.le1()) == 0);
}

TEST_CASE("build preconditions") {
    CHECK_THROWS_AS(build_hierarchy(ClosedSet(), O("w+1")), PreconditionError);
    CHECK_THROWS_AS(build_hierarchy(ClosedSet::from_elements(Os({"0", "w"})), O("1")), PreconditionError);
    CHECK_THROWS_AS(build_hierarchy(std::vector<Ordinal>(Os({"0", "w+1"})), O("w^(2)")), PreconditionError);
    CHECK_NOTHROW(build_hierarchy(std::vector<Ordinal>(Os({"0", "w"})), O("w")));
}

TEST_CASE("default top") {
    CHECK(default_top(ClosedSet()) == O("1"));
    CHECK(default_top(ClosedSet::closure({O("w+w")})) == O("w^(2)"));
    CHECK(default_top(ClosedSet::closure({O("1+1")})) == O("w"));
}

TEST_CASE("unbounded games keep no strict pair on any finite carrier") {
    // Counting argument: [0, b) has more elements than [0, a) for a < b, and
    // every game map is injective, so the unrestricted move always wins.
    for (const auto& name : shipped_carrier_names()) {
        const Hierarchy H = build(load_carrier(name));
        CHECK(strict_pairs(H.le1()) == 0);
        CHECK(strict_pairs(H.le2()) == 0);
    }
}

TEST_CASE("le_inf examples") {
    const Hierarchy h1 = build_hierarchy(ClosedSet::from_elements(Os({"0", "1"})), O("w"));
    CHECK(le_inf(h1, 1, O("1"), O("1")));
    CHECK(le_inf(h1, 2, O("0"), O("0")));
    CHECK_FALSE(le_inf(h1, 1, O("0"), O("1"), 1));
    const Hierarchy h3 = build(ClosedSet::closure({O("w+w")}));
    // The move {0, w} below w+w has no image inside {0}.
    CHECK_FALSE(le_inf(h3, 1, O("w"), O("w+w"), 1));
    CHECK_THROWS_AS(le_inf(h3, 1, O("1"), O("w")), PreconditionError);
}

TEST_CASE("axiom report") {
    const AxiomReport r0 = check_hierarchy_axioms(build_hierarchy(ClosedSet(), O("1")));
    CHECK(r0.exact_ok());
    CHECK(r0.inf_pairs_checked == 0);
    CHECK(r0.inf_failures.empty());

    const auto c = ClosedSet::from_elements(Os({"0", "1"}));
    BitMatrix le1 = BitMatrix::identity(2);
    BitMatrix le2 = BitMatrix::identity(2);
    le2.set(0, 1);
    const AxiomReport bad = check_hierarchy_axioms(Hierarchy::from_parts(c, O("w"), le1, le2));
    CHECK_FALSE(bad.exact_ok());
    REQUIRE_FALSE(bad.partial_orders.empty());
    CHECK(bad.partial_orders.front().clause == "le2-not-subset-le1");
    CHECK(bad.to_text().find("(b)") != std::string::npos);

    const AxiomReport bad_top = check_hierarchy_axioms(
        Hierarchy::from_parts(c, O("w+1"), BitMatrix::identity(2), BitMatrix::identity(2)));
    CHECK_FALSE(bad_top.top_ok);

    const AxiomReport r3 = check_hierarchy_axioms(build(ClosedSet::closure({O("w+w")})));
    std::string diag;
    CHECK_MESSAGE(matches_golden("axioms_closure_w2.txt", r3.to_text(), &diag), diag);
}

TEST_CASE("width-one games give nontrivial relations on sparse carriers") {
    const Hierarchy H = build({"0", "1", "w", "w^(2)"}, 1);
    CHECK(H.le2()(2, 3));
    CHECK(H.le1()(2, 3));
    CHECK_FALSE(H.le1()(1, 2));
    CHECK(longest_chain2(H) == Os({"w", "w^(2)"}));
}

TEST_CASE("build properties on the shipped carriers") {
    for (std::size_t width : {0, 1}) {
        for (const auto& name : shipped_carrier_names()) {
            CAPTURE(name);
            CAPTURE(width);
            const ClosedSet c = load_carrier(name);
            const Hierarchy H = build(c, width);
            const std::size_t n = c.size();
            CHECK(H.log().round_count() <= n * n);
            for (std::size_t i = 1; i < H.log().rounds.size(); ++i) {
                // Pruning only ever removes; the last round removes nothing.
                CHECK(H.log().rounds[i].round == i + 1);
            }
            CHECK(H.log().rounds.back().total() == 0);
            BitMatrix le1 = H.le1();
            BitMatrix le2 = H.le2();
            CHECK(pruning_round(c, le1, le2, H.options()) == 0);
            CHECK(le1 == H.le1());
            CHECK(le2 == H.le2());
            CHECK(check_hierarchy_axioms(H).exact_ok());
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = a + 1; b < n; ++b) {
                    if (H.le1()(a, b)) {
                        CHECK(c.is_indecomposable(a));
                    }
                    if (H.le2()(a, b)) {
                        CHECK(c.is_indecomposable(a));
                        CHECK(c.is_indecomposable(b));
                    }
                }
            }
            const Hierarchy again = build(c, width);
            CHECK(again == H);
            CHECK(write_hierarchy(again) == write_hierarchy(H));
        }
    }
}

TEST_CASE("retained width-one pairs win every single-generator move") {
    for (const char* name : {"c4", "c20"}) {
        CAPTURE(name);
        const Hierarchy H = build(load_carrier(name), 1);
        const auto& c = H.carrier();
        std::size_t checked = 0;
        for (std::size_t a = 0; a < c.size(); ++a) {
            for (std::size_t b = a + 1; b < c.size(); ++b) {
                if (!H.le1()(a, b)) {
                    continue;
                }
                for (std::size_t g = 0; g < b; ++g) {
                    const std::vector<std::size_t> gen{g};
                    const auto X = detail::closure_in(c, gen);
                    CHECK(naive_first_round(H, a, X));
                    ++checked;
                }
            }
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("relations shrink as the carrier grows") {
    const std::vector<std::pair<std::string, std::string>> nested{
        {"c1", "c4"}, {"c2", "c3"}, {"c3", "c4"}, {"c20", "c25"}, {"c20", "c35"}, {"c25", "c35"}};
    for (const auto& [small, big] : nested) {
        CAPTURE(small);
        CAPTURE(big);
        const ClosedSet cs = load_carrier(small);
        const ClosedSet cb = load_carrier(big);
        if (!cs.is_subset_of(cb)) {
            continue;
        }
        const Hierarchy Hs = build(cs);
        const Hierarchy Hb = build(cb);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            for (std::size_t j = 0; j < cs.size(); ++j) {
                const auto bi = *cb.index_of(cs[i]);
                const auto bj = *cb.index_of(cs[j]);
                CHECK((!Hb.le1()(bi, bj) || Hs.le1()(i, j)));
                CHECK((!Hb.le2()(bi, bj) || Hs.le2()(i, j)));
            }
        }
    }
}
