#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "patternforge/error.hpp"

using namespace pft;

namespace {

Pattern trivial(std::initializer_list<const char*> u) { return Pattern::trivial(ClosedSet::from_elements(Os(u))); }

Pattern with_pairs(std::initializer_list<const char*> u, std::vector<std::pair<const char*, const char*>> le1,
                   std::vector<std::pair<const char*, const char*>> le2) {
    CandidateStructure s;
    s.universe = Os(u);
    for (auto [a, b] : le1) {
        s.le1.emplace_back(O(a), O(b));
    }
    for (auto [a, b] : le2) {
        s.le2.emplace_back(O(a), O(b));
    }
    return Pattern::from_candidate(s);
}

Covering cov(std::initializer_list<const char*> image) { return Covering{Os(image)}; }

std::vector<std::vector<Ordinal>> images(const std::vector<Covering>& cs) {
    std::vector<std::vector<Ordinal>> out;
    for (const auto& c : cs) {
        out.push_back(c.image);
    }
    return out;
}

std::vector<std::vector<Ordinal>> brute_force(const Pattern& P, const Hierarchy& H) {
    std::vector<std::vector<Ordinal>> out;
    for_each_map(P.size(), H.size(), [&](const std::vector<std::size_t>& m) {
        std::vector<Ordinal> img;
        for (auto p : m) {
            img.push_back(H.carrier()[p]);
        }
        if (naive_is_covering(img, P, H)) {
            out.push_back(img);
        }
    });
    return out;
}

} // namespace

TEST_CASE("is_covering examples") {
    const Hierarchy H = build({"0", "1", "w", "w^(2)"}, 1);
    const std::vector<std::size_t> all{0, 1, 2, 3};
    const Pattern whole = H.restrict(all);
    CHECK(is_covering(cov({"0", "1", "w", "w^(2)"}).as_map(whole), whole, H));

    const Hierarchy H20 = build(load_carrier("c20"));
    const Pattern P = Pattern::trivial(ClosedSet::closure({O("w+1")}));
    CHECK(is_covering(cov({"0", "1", "w^(2)", "w^(2)+1"}).as_map(P), P, H20));
    CHECK_FALSE(is_covering(cov({"0", "1", "w^(2)", "w+1"}).as_map(P), P, H20));
    CHECK_FALSE(is_covering(cov({"0", "1", "w", "w+1+1"}).as_map(P), P, H20));
    CHECK_FALSE(is_covering(cov({"0", "1", "w"}).as_map(P), P, H20));

    const Pattern le2 = with_pairs({"0", "1", "w", "w^(2)"}, {{"w", "w^(2)"}}, {{"w", "w^(2)"}});
    CHECK(is_covering(cov({"0", "1", "w", "w^(2)"}).as_map(le2), le2, H));
    const Hierarchy flat = build({"0", "1", "w", "w^(2)"}, 0);
    CHECK_FALSE(is_covering(cov({"0", "1", "w", "w^(2)"}).as_map(le2), le2, flat));
}

TEST_CASE("search_coverings examples") {
    const Hierarchy H20 = build(load_carrier("c20"), 1);
    const auto zero = search_coverings(Pattern(), H20);
    REQUIRE(zero.size() == 1);
    CHECK(zero.front().image == Os({"0"}));

    const Pattern dec = with_pairs({"0", "1", "1+1"}, {{"1", "1+1"}}, {{"1", "1+1"}});
    CHECK(search_coverings(dec, H20).empty());

    const Hierarchy H3 = build(ClosedSet::closure({O("w+w")}));
    const auto c = search_coverings(Pattern::trivial(ClosedSet::closure({O("w")})), H3);
    CHECK(images(c) == brute_force(Pattern::trivial(ClosedSet::closure({O("w")})), H3));
    std::string diag;
    std::string text;
    for (const auto& h : c) {
        text += write_covering(Pattern::trivial(ClosedSet::closure({O("w")})), h);
    }
    CHECK_MESSAGE(matches_golden("coverings_w_in_closure_w2.txt", std::to_string(c.size()) + "\n" + text, &diag),
                  diag);
}

TEST_CASE("search_coverings order and constraints") {
    const Hierarchy H = build(load_carrier("c20"));
    const Pattern P = trivial({"0", "1", "w"});
    const auto all = search_coverings(P, H);
    CHECK(all.size() == 3);  // pairs of increasing indecomposables among {1, w, w^(2)}
    CHECK(std::is_sorted(all.begin(), all.end(), [](const Covering& a, const Covering& b) { return a.image < b.image; }));
    CoveringConstraints fixed;
    fixed.fixed.emplace(O("1"), O("w"));
    CHECK(images(search_coverings(P, H, fixed)) == std::vector<std::vector<Ordinal>>{Os({"0", "w", "w^(2)"})});
    CoveringConstraints lower;
    lower.lower.emplace(O("w"), O("w+w+w"));
    CHECK(search_coverings(P, H, lower).size() == 2);
    CoveringConstraints one;
    one.limit = 1;
    CHECK(search_coverings(P, H, one).size() == 1);
}

TEST_CASE("search_coverings matches brute force on small patterns") {
    for (std::size_t width : {0, 1}) {
        const Hierarchy H = build({"0", "1", "w", "w+1", "w+w", "w^(2)", "w^(2)+1", "w^(2)+w"}, width);
        std::size_t patterns = 0;
        for (const auto& sub : naive_closed_subsets(H.carrier(), 4)) {
            const Pattern shape = Pattern::trivial(H.restrict(sub).universe());
            for_each_valid_pattern(shape.universe(), [&](const Pattern& P) {
                ++patterns;
                CHECK(images(search_coverings(P, H)) == brute_force(P, H));
            });
        }
        CHECK(patterns > 20);
    }
}

TEST_CASE("extends_above") {
    const Hierarchy H = build(load_carrier("c20"));
    const Pattern P = trivial({"0", "w"});
    const Pattern Pplus = trivial({"0", "1", "w"});
    const Covering h = cov({"0", "w^(2)"});
    const RegressiveMap phi_w(TermMap{{O("w^(2)"), O("w")}});
    const RegressiveMap phi_1(TermMap{{O("w^(2)"), O("1")}});
    CHECK(extends_above(P, h, P, h, phi_w));
    CHECK_FALSE(extends_above(Pplus, cov({"0", "1", "w^(2)"}), P, h, phi_w));
    CHECK_FALSE(extends_above(Pplus, cov({"0", "w", "w^(2)"}), P, h, phi_w));
    CHECK(extends_above(Pplus, cov({"0", "w", "w^(2)"}), P, h, phi_1));
    CHECK(extends_above(trivial({"0", "w", "w^(2)"}), cov({"0", "w^(2)", "w^(2)"}), P, h, phi_w));
    CHECK_THROWS_AS(extends_above(Pplus, cov({"0", "1", "w"}), P, h, phi_w), PreconditionError);
    CHECK_THROWS_AS(extends_above(P, h, Pplus, cov({"0", "1", "w"}), phi_w), PreconditionError);
    CHECK_THROWS_AS(RegressiveMap(TermMap{{O("w"), O("w")}}), PreconditionError);
}

TEST_CASE("extends_above holds for h over itself under every regressive map") {
    const Hierarchy H = build(load_carrier("c20"), 1);
    for (const char* top : {"w+1", "w^(2)+w", "1+1"}) {
        const Pattern P = Pattern::trivial(ClosedSet::closure({O(top)}));
        for (const auto& h : search_coverings(P, H)) {
            for (const auto& phi : all_regressive_maps(H, regressive_domain(H, h.image), 200)) {
                CHECK(extends_above(P, h, P, h, phi));
            }
        }
    }
}

TEST_CASE("extend_covering") {
    const Hierarchy H20 = build(load_carrier("c20"));
    const Pattern P = trivial({"0", "w"});
    const Covering h = cov({"0", "w^(2)"});
    auto same = extend_covering(P, P, h, RegressiveMap::maximal(H20, h.image), H20);
    REQUIRE(same);
    CHECK(*same == h);

    const Hierarchy Hw = build(ClosedSet::closure({O("w")}));
    auto up = extend_covering(Pattern(), trivial({"0", "1"}), cov({"0"}), RegressiveMap(), Hw);
    REQUIRE(up);
    CHECK(up->image == Os({"0", "w"}));  // w is the only indecomposable of the carrier

    // The maximal bound below w^(2) is w+w+w; no indecomposable lies in between.
    const Pattern Pplus = trivial({"0", "1", "w"});
    CHECK_FALSE(extend_covering(P, Pplus, h, RegressiveMap::maximal(H20, h.image), H20));
    auto loose = extend_covering(P, Pplus, h, RegressiveMap(TermMap{{O("w^(2)"), O("1+1")}}), H20);
    REQUIRE(loose);
    CHECK(loose->image == Os({"0", "w", "w^(2)"}));
    CHECK_THROWS_AS(extend_covering(Pplus, P, h, RegressiveMap(), H20), PreconditionError);
    CHECK_THROWS_AS(extend_covering(P, Pplus, cov({"0", "w+1"}), RegressiveMap(), H20), PreconditionError);
}

TEST_CASE("extensions are coverings extending above their bound") {
    const Hierarchy H = build(load_carrier("c20"), 1);
    const std::vector<std::pair<Pattern, Pattern>> pairs{
        {trivial({"0", "w"}), trivial({"0", "1", "w"})},
        {trivial({"0", "w"}), trivial({"0", "w", "w+w"})},
        {trivial({"0", "w^(2)"}), trivial({"0", "1", "w", "w^(2)"})},
        {trivial({"0"}), trivial({"0", "1", "w"})},
    };
    std::size_t extended = 0;
    for (const auto& [P, Pplus] : pairs) {
        for (const auto& h : search_coverings(P, H)) {
            for (const auto& phi : all_regressive_maps(H, regressive_domain(H, h.image))) {
                auto hp = extend_covering(P, Pplus, h, phi, H);
                if (hp) {
                    ++extended;
                    CHECK(is_covering(hp->as_map(Pplus), Pplus, H));
                    CHECK(naive_is_covering(hp->image, Pplus, H));
                    CHECK(extends_above(Pplus, *hp, P, h, phi));
                }
            }
        }
    }
    CHECK(extended > 10);
}

TEST_CASE("maximal regressive map dominates") {
    const Hierarchy H = build(load_carrier("c20"), 1);
    const std::vector<std::pair<Pattern, Pattern>> pairs{
        {trivial({"0", "w"}), trivial({"0", "1", "w"})},
        {trivial({"0", "w^(2)"}), trivial({"0", "w", "w^(2)"})},
        {trivial({"0", "1", "w^(2)"}), trivial({"0", "1", "w", "w^(2)"})},
    };
    for (const auto& [P, Pplus] : pairs) {
        for (const auto& h : search_coverings(P, H)) {
            const auto dom = regressive_domain(H, h.image);
            REQUIRE(dom.size() <= 2);
            const bool top = extend_covering(P, Pplus, h, RegressiveMap::maximal(H, h.image), H).has_value();
            for (const auto& phi : all_regressive_maps(H, dom)) {
                const bool any = extend_covering(P, Pplus, h, phi, H).has_value();
                if (top) {
                    CHECK(any);
                }
            }
        }
    }
}

TEST_CASE("all_regressive_maps") {
    const Hierarchy H = build(load_carrier("c20"));
    const auto dom = regressive_domain(H, Os({"0", "1", "w", "w^(2)"}));
    // Only the carrier minimum 0 is excluded; 1 may be bounded by 0.
    CHECK(dom == Os({"1", "w", "w^(2)"}));
    const auto maps = all_regressive_maps(H, dom);
    CHECK(maps.size() == 1 * 4 * 10);
    for (const auto& m : maps) {
        for (const auto& [x, b] : m.bounds()) {
            CHECK(b < x);
        }
    }
    CHECK(all_regressive_maps(H, dom, 7).size() == 7);
}

TEST_CASE("cofinal validity") {
    const Hierarchy H = build(load_carrier("c20"), 1);
    const Pattern P = trivial({"0", "1"});
    const auto same = test_cofinal_validity(P, P, H);
    CHECK(same.valid);
    CHECK(same.coverings_checked == 3);
    const Pattern forced = with_pairs({"0", "1", "1+1"}, {{"1", "1+1"}}, {{"1", "1+1"}});
    const auto bad = test_cofinal_validity(P, forced, H);
    CHECK_FALSE(bad.valid);
    REQUIRE(bad.counterexample);
    CHECK(bad.counterexample->image == Os({"0", "1"}));
    const auto budget = test_cofinal_validity(P, P, H, {1, 3});
    CHECK(budget.budget_exhausted);
    CHECK(budget.coverings_checked == 1);
    CHECK_THROWS_AS(test_cofinal_validity(forced, P, H), PreconditionError);
}
