#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "patternforge/dot.hpp"
#include "patternforge/rules.hpp"

#include <sys/wait.h>

using namespace pft;

namespace {

namespace fs = std::filesystem;

struct Run {
    int code = -1;
    std::string out;
};

class Workspace {
public:
    Workspace() {
        dir_ = fs::temp_directory_path() / ("pf_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    ~Workspace() { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string put(const std::string& name, const std::string& content) const {
        write_file(dir_ / name, content);
        return path(name);
    }

    Run run(const std::string& args) const {
        const std::string out = path("stdout.txt");
        const std::string cmd = std::string("\"") + PF_CLI_PATH + "\" " + args + " > \"" + out + "\" 2>&1";
        const int status = std::system(cmd.c_str());
        Run r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = read_file(out);
        return r;
    }

private:
    fs::path dir_;
};

std::string carrier_path(const std::string& name) { return std::string(PF_DATA_DIR) + "/carriers/" + name + ".txt"; }

std::string pattern_text(std::initializer_list<const char*> u, std::vector<std::pair<const char*, const char*>> le1,
                         std::vector<std::pair<const char*, const char*>> le2) {
    CandidateStructure s;
    s.universe = Os(u);
    for (auto [a, b] : le1) {
        s.le1.emplace_back(O(a), O(b));
    }
    for (auto [a, b] : le2) {
        s.le2.emplace_back(O(a), O(b));
    }
    return format_document(to_json(s));
}

} // namespace

TEST_CASE("usage errors") {
    Workspace ws;
    CHECK(ws.run("").code == 2);
    CHECK(ws.run("frobnicate").code == 2);
    CHECK(ws.run("--help").code == 0);
    CHECK(ws.run("build --help").code == 0);
    CHECK(ws.run("validate").code == 2);
    CHECK(ws.run("validate " + ws.path("missing.pattern")).code == 2);
    CHECK(ws.run("--format xml validate " + ws.path("missing.pattern")).code == 2);
    const std::string junk = ws.put("junk.pattern", "not a pattern\n");
    const Run r = ws.run("validate " + junk);
    CHECK(r.code == 2);
    CHECK(r.out.rfind("error:", 0) == 0);
    CHECK(ws.run("build --carrier " + junk).code == 2);
    CHECK(ws.run("core " + junk).code == 2);
}

TEST_CASE("validate") {
    Workspace ws;
    const std::string good = ws.put("good.pattern", pattern_text({"0", "1", "w"}, {{"1", "w"}}, {}));
    const Run ok = ws.run("validate " + good);
    CHECK(ok.code == 0);
    CHECK(ok.out.find("ok") != std::string::npos);

    const std::string bad = ws.put("bad.pattern", pattern_text({"0", "1"}, {}, {{"0", "1"}}));
    const Run no = ws.run("validate " + bad);
    CHECK(no.code == 1);
    CHECK(no.out.find("le2-not-subset-le1") != std::string::npos);
    const Run json = ws.run("--format json validate " + bad);
    CHECK(json.code == 1);
    CHECK(Json::accept(json.out));

    const std::string hier = ws.path("c20.hier");
    REQUIRE(ws.run("build --carrier " + carrier_path("c20") + " --out " + hier).code == 0);
    const std::string trivial = ws.put("trivial.pattern", pattern_text({"0", "1", "w"}, {}, {}));
    CHECK(ws.run("validate " + trivial + " --host " + hier).code == 0);
    CHECK(ws.run("validate " + good + " --host " + hier).code == 1);
}

TEST_CASE("build is deterministic") {
    Workspace ws;
    const std::string a = ws.path("a.hier");
    const std::string b = ws.path("b.hier");
    CHECK(ws.run("build --carrier " + carrier_path("c4") + " --top \"w^(2)+w\" --out " + a).code == 2);
    REQUIRE(ws.run("build --carrier " + carrier_path("c4") + " --top \"w^(3)\" --out " + a).code == 0);
    REQUIRE(ws.run("--seed 7 build --carrier " + carrier_path("c4") + " --top \"w^(3)\" --out " + b).code == 0);
    CHECK(read_file(a) == read_file(b));
    CHECK(read_hierarchy(read_file(a)) == build_hierarchy(load_carrier("c4"), O("w^(3)")));

    const std::string open = ws.put("open.txt", "0\nw+1\n");
    CHECK(ws.run("build --carrier " + open).code == 2);
    CHECK(ws.run("build --close --carrier " + open + " --out " + a).code == 0);
    CHECK(read_hierarchy(read_file(a)).carrier() == ClosedSet::closure({O("w+1")}));
}

TEST_CASE("axioms, chains and export-dot") {
    Workspace ws;
    const std::string h0 = ws.path("h0.hier");
    const std::string h1 = ws.path("h1.hier");
    const std::string sparse = ws.put("sparse.txt", "0\n1\nw\nw^(2)\nw^(3)\n");
    REQUIRE(ws.run("build --carrier " + carrier_path("c20") + " --out " + h0).code == 0);
    REQUIRE(ws.run("build --width 1 --carrier " + sparse + " --out " + h1).code == 0);
    CHECK(ws.run("axioms " + h0).code == 0);
    const auto bad = Hierarchy::from_parts(ClosedSet::from_elements(Os({"0", "1"})), O("w+1"), BitMatrix::identity(2),
                                           BitMatrix::identity(2));
    CHECK(ws.run("axioms " + ws.put("bad.hier", write_hierarchy(bad))).code == 1);

    CHECK(ws.run("chains " + h0).code == 1);
    const Run c = ws.run("--sugar chains " + h1);
    CHECK(c.code == 0);
    CHECK(c.out.find("w^(2)") != std::string::npos);

    const Run d = ws.run("export-dot " + h1);
    CHECK(d.code == 0);
    CHECK(d.out == export_dot(read_hierarchy(read_file(h1))));
    const std::string dot = ws.path("h1.dot");
    CHECK(ws.run("export-dot " + h1 + " --out " + dot).code == 0);
    CHECK(read_file(dot) == d.out);
    CHECK(ws.run("export-dot " + ws.put("x.json", "patternforge-v1\n{\"x\": 1}\n")).code == 2);
}

TEST_CASE("cover, isominimal, core and compare") {
    Workspace ws;
    const std::string h20 = ws.path("c20.hier");
    const std::string h35 = ws.path("c35.hier");
    REQUIRE(ws.run("build --carrier " + carrier_path("c20") + " --out " + h20).code == 0);
    REQUIRE(ws.run("build --carrier " + carrier_path("c35") + " --out " + h35).code == 0);

    const std::string p = ws.put("w.pattern", pattern_text({"0", "w"}, {}, {}));
    const std::string cov = ws.path("w.cover");
    CHECK(ws.run("cover " + p + " " + h20 + " --limit 2 --out " + cov).code == 0);
    const auto [P, h] = read_covering(read_file(cov));
    CHECK(is_covering(h.as_map(P), P, read_hierarchy(read_file(h20))));
    const std::string rel = ws.put("rel.pattern", pattern_text({"0", "1", "w"}, {{"1", "w"}}, {{"1", "w"}}));
    CHECK(ws.run("cover " + rel + " " + h20).code == 1);
    CHECK(ws.run("isominimal " + rel + " " + h20).code == 1);
    const std::string iso = ws.path("iso.pattern");
    CHECK(ws.run("isominimal " + p + " " + h20 + " --out " + iso).code == 0);
    CHECK(read_pattern(read_file(iso)).universe().elements() == Os({"0", "1"}));

    const std::string c20 = ws.path("c20.core");
    const std::string c35 = ws.path("c35.core");
    const std::string c20b1 = ws.path("c20b1.core");
    REQUIRE(ws.run("core " + h20 + " --bound 2 --out " + c20).code == 0);
    REQUIRE(ws.run("core " + h35 + " --bound 2 --out " + c35).code == 0);
    REQUIRE(ws.run("core " + h20 + " --bound 1 --out " + c20b1).code == 0);
    CHECK(ws.run("core " + h20 + " --bound 0").code == 2);
    const Run same = ws.run("compare " + c20 + " " + c35);
    CHECK(same.code == 0);
    CHECK(same.out.find("--- machine-readable ---") != std::string::npos);
    CHECK(ws.run("compare " + c20 + " " + c20b1).code == 2);

    Core cut = read_core(read_file(c20));
    cut.members.resize(2);
    cut.member_witness.resize(2);
    const std::string short_core = ws.put("short.core", write_core(cut));
    CHECK(ws.run("compare " + short_core + " " + c20).code == 0);
    CHECK(ws.run("compare " + c20 + " " + short_core).code == 1);
}

TEST_CASE("rule-test") {
    Workspace ws;
    const std::string h = ws.path("h.hier");
    REQUIRE(ws.run("build --width 1 --carrier " + ws.put("s.txt", "0\n1\nw\nw^(2)\nw^(3)\n") + " --out " + h).code ==
            0);
    CandidateStructure s;
    s.universe = Os({"0", "w", "w^(2)"});
    s.le1 = {{O("w"), O("w^(2)")}};
    const Pattern P = Pattern::from_candidate(s);
    const std::string id = ws.put("id.rule", write_rule(make_generic(P, P)));
    CHECK(ws.run("rule-test " + id + " " + h).code == 0);
    const auto sq = Os({"w^(2)"});
    const std::string down = ws.put("down.rule", write_rule(make_reflect1_down(P, O("w"), O("w^(2)"), sq)));
    const std::string verdict = ws.path("verdict.json");
    CHECK(ws.run("rule-test " + down + " " + h + " --max-phis 8 --out " + verdict).code == 1);
    CHECK(parse_document(read_file(verdict)).contains("valid"));
}
