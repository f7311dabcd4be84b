#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "lsite/cli.hpp"
#include "lsite/fixtures.hpp"

using namespace lsite;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("lsite_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Result {
    int code;
    std::string out, err;
    Json report() const { return Json::parse(out); }
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    args.push_back("--json");
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

bool same_system(const CoverSystem& a, const CoverSystem& b) {
    return a.mode == b.mode && a.certified == b.certified && a.basics == b.basics &&
           structurally_equal(*a.category, *b.category);
}

void check_roundtrip(const Workspace& ws) {
    Json j = workspace_to_json(ws);
    Workspace back = workspace_from_json(Json::parse(j.dump()));
    CHECK(workspace_to_json(back) == j);
    CHECK(back.field == ws.field);
    REQUIRE(back.categories.size() == ws.categories.size());
    for (const auto& [n, c] : ws.categories) {
        CHECK(structurally_equal(*back.category(n), *c));
        CHECK(back.category(n)->data().labels == c->data().labels);
        CHECK(back.category(n)->factors().has_value() == c->factors().has_value());
    }
    for (const auto& [n, f] : ws.functors) {
        const auto& g = back.functor(n).functor;
        CHECK(g.object_map() == f.functor.object_map());
        CHECK(g.hom_maps() == f.functor.hom_maps());
    }
    for (const auto& [n, m] : ws.modules) {
        CHECK(back.module(n).module.dims() == m.module.dims());
        CHECK(back.module(n).module.action() == m.module.action());
    }
    for (const auto& [n, s] : ws.cover_systems) CHECK(same_system(back.cover_system(n).system, s.system));
    for (const auto& [n, g] : ws.graded_algebras) {
        CHECK(back.graded_algebra(n) == g);
        CHECK(back.graded_algebra(n).labels == g.labels);
        CHECK(back.graded_algebra(n).monomials == g.monomials);
    }
    for (const auto& [n, z] : ws.zalgebras) {
        CHECK(back.zalgebra(n).algebra.lo() == z.algebra.lo());
        CHECK(back.zalgebra(n).algebra.hi() == z.algebra.hi());
        CHECK(structurally_equal(*back.zalgebra(n).algebra.category(), *z.algebra.category()));
    }
    CHECK(back.site_morphisms.size() == ws.site_morphisms.size());
}

}  // namespace

TEST_CASE("fixture workspaces round-trip") {
    for (const auto& f : {Field::prime(2), Field::prime(3), Field::rationals()})
        for (const auto& name : fixture_names()) check_roundtrip(fixture_workspace(name, f));
}

TEST_CASE("constructed entities round-trip through files") {
    TempDir dir;
    const std::string s1 = dir / "s1.json", t = dir / "t.json", z = dir / "z.json";
    REQUIRE(cli({"fixture", "s1", "--out", s1}).code == 0);
    auto r = cli({"tensor-site", s1, "alpha", "alpha", "--out", t});
    REQUIRE(r.code == 0);
    CHECK(r.report()["objects"] == 4);
    CHECK(r.report()["basic_covers"] == 4);
    Workspace wt = load_workspace(t);
    CHECK(wt.category("S1⊗S1")->factors().has_value());
    check_roundtrip(wt);
    // the reloaded tensor category still supports tensor operations
    auto s = wt.category("S1");
    CHECK(same_system(wt.cover_system("alpha⊗alpha").system,
                      tensor_topology(wt.category("S1⊗S1"), fixtures::s1_alpha_system(s),
                                      fixtures::s1_alpha_system(s))));

    REQUIRE(cli({"enumerate", "modules", t, "S1⊗S1", "--bound", "1", "--prefix", "m", "--out", t}).code == 0);
    REQUIRE(cli({"sheafify", t, "m7", "alpha⊗alpha", "--out", t}).code == 0);
    check_roundtrip(load_workspace(t));

    REQUIRE(cli({"fixture", "zalg", "--out", z}).code == 0);
    REQUIRE(cli({"zalg", "from-graded", z, "k[x,y]", "--name", "A", "--out", z}).code == 0);
    REQUIRE(cli({"zalg", "from-graded", z, "k[u,v]", "--name", "B", "--out", z}).code == 0);
    REQUIRE(cli({"zalg", "diagonal", z, "A", "B", "--name", "C", "--out", z}).code == 0);
    REQUIRE(cli({"zalg", "tails", z, "C", "--out", z}).code == 0);
    REQUIRE(cli({"zalg", "segre", z, "k[x,y]", "k[u,v]", "--out", z}).code == 0);
    REQUIRE(cli({"zalg", "polynomial", z, "--vars", "x,y,z", "--bound", "3", "--relations", "0,2,0", "--out", z})
                .code == 0);
    Workspace wz = load_workspace(z);
    check_roundtrip(wz);
    CHECK(wz.graded_algebra("k[x,y,z]").dims == std::vector<std::size_t>{1, 3, 5, 7});
    CHECK(cli({"validate", z}).code == 0);
}

TEST_CASE("reports are deterministic") {
    TempDir dir;
    const std::string s1 = dir / "s1.json", z = dir / "z.json";
    REQUIRE(cli({"fixture", "s1", "--out", s1}).code == 0);
    REQUIRE(cli({"fixture", "zalg", "--out", z}).code == 0);
    const std::vector<std::vector<std::string>> commands{
        {"validate", s1},
        {"axioms", s1, "raw_singleton"},
        {"closure", s1, "alpha", "--witness"},
        {"tensor-site", s1, "alpha", "alpha"},
        {"check-functor", s1, "include_2"},
        {"tensor-functor", s1, "include_1", "include_1"},
        {"sheaf", s1, "simple_2", "alpha"},
        {"sheafify", s1, "line", "supp1"},
        {"serre", "hull", s1, "rep_2", "--class", "support:1", "--class", "support:2"},
        {"enumerate", "sieves", s1, "S1", "2", "--system", "alpha"},
        {"zalg", "check-delta", z, "k[x,y]", "k[u,v]"},
        {"zalg", "window-sweep", z, "k[x]", "k[y]", "--hi-max", "4"},
        {"fixture", "two-cycle"},
    };
    for (const auto& c : commands) {
        auto a = cli(c), b = cli(c);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
        CHECK(a.report().contains("caps"));
        CHECK_FALSE(a.out.find("elapsed") != std::string::npos);
    }
    // written workspaces are byte-identical too
    const std::string o1 = dir / "o1.json", o2 = dir / "o2.json";
    cli({"tensor-site", s1, "alpha", "alpha", "--out", o1});
    cli({"tensor-site", s1, "alpha", "alpha", "--out", o2});
    std::ifstream f1(o1), f2(o2);
    std::stringstream b1, b2;
    b1 << f1.rdbuf();
    b2 << f2.rdbuf();
    CHECK(b1.str() == b2.str());
}

TEST_CASE("exit codes") {
    TempDir dir;
    const std::string s1 = dir / "s1.json", bad = dir / "bad.json", broken = dir / "broken.json";
    REQUIRE(cli({"fixture", "s1", "--out", s1}).code == 0);
    CHECK(cli({"validate", s1}).code == 0);

    write_file(bad, "{\"version\": \"1\", \"field\": ");
    CHECK(cli({"validate", bad}).code == 2);
    CHECK(cli({"validate", dir / "missing.json"}).code == 2);
    write_file(bad, R"({"version": "9", "field": 2})");
    CHECK(cli({"validate", bad}).code == 2);
    CHECK(cli({"validate", s1, "--field", "3"}).code == 2);
    CHECK(cli({"nonsense"}).code == 2);

    Workspace w;
    w.categories["S1"] = make_category(fixtures::s1_broken_data());
    save_workspace(w, broken);
    auto r = cli({"validate", broken});
    CHECK(r.code == 1);
    const Json ce = r.report()["counterexamples"];
    REQUIRE_FALSE(ce.empty());
    CHECK(ce[0]["kind"] == "unit");
    CHECK(ce[0]["objects"] == Json::array({"1", "2"}));
    CHECK(ce[0]["data"][0]["name"] == "morphism");

    CHECK(cli({"axioms", s1, "alpha"}).code == 0);
    auto raw = cli({"axioms", s1, "raw_singleton"});
    CHECK(raw.code == 1);
    bool pullback = false;
    const Json raw_report = raw.report();
    for (const auto& c : raw_report["counterexamples"]) pullback = pullback || c["kind"] == "pullback";
    CHECK(pullback);
    auto empty = cli({"axioms", s1, "empty_at_1"});
    CHECK(empty.report()["counterexamples"][0]["kind"] == "identity");

    CHECK(cli({"check-functor", s1, "include_1", "--property", "LC"}).code == 0);
    auto g = cli({"check-functor", s1, "include_2", "--property", "G"});
    CHECK(g.code == 1);
    CHECK(g.report()["counterexamples"][0]["objects"] == Json::array({"1"}));
    CHECK(cli({"check-functor", s1, "identity_alpha"}).code == 0);
    CHECK(cli({"check-functor", s1, "include_1", "--property", "XX"}).code == 2);

    auto sh = cli({"sheafify", s1, "simple_2", "alpha"}).report();
    CHECK(sh["dims_after"] == Json::array({0, 0}));
    CHECK(sh["null_presheaf"] == true);
    auto rep = cli({"sheafify", s1, "rep_2", "alpha"}).report();
    CHECK(rep["dims_after"] == rep["dims_before"]);
    CHECK(rep["unit_iso"] == true);

    auto cap = cli({"enumerate", "modules", s1, "S1", "--bound", "2", "--cap-module", "4"});
    CHECK(cap.code == 3);
    CHECK(cap.report()["error"]["cap"] == "cap-module");
    CHECK(cap.report()["caps"]["cap-module"] == 4);

    // the workspace field is fixed; asking for another one is an input error
    CHECK(cli({"tensor-site", s1, "alpha", "alpha", "--field", "3"}).code == 2);
}

TEST_CASE("zalg commands") {
    TempDir dir;
    const std::string z = dir / "z.json";
    REQUIRE(cli({"fixture", "zalg", "--out", z}).code == 0);
    auto s = cli({"zalg", "segre", z, "k[x0,x1]", "k[y0,y1]"});
    CHECK(s.code == 0);
    CHECK(s.report()["dims"] == Json::array({1, 4, 9, 16, 25}));
    auto d = cli({"zalg", "check-delta", z, "k[x,y]", "k[u,v]", "--lo", "0", "--hi", "3"});
    CHECK(d.code == 0);
    CHECK(d.report()["label"] == "window-limited");
    CHECK(cli({"zalg", "from-graded", z, "k[x]", "--lo", "0", "--hi", "5"}).code == 2);
    auto pre = cli({"zalg", "check-delta", z, "k[x](2)", "k[y]"});
    CHECK(pre.code == 2);
    CHECK(pre.report()["error"]["type"] == "precondition");
    auto sweep = cli({"zalg", "window-sweep", z, "k[x,y]", "k[u,v]", "--hi-max", "4"}).report();
    CHECK(sweep["trend"] == "PPP");
    CHECK(cli({"zalg", "polynomial", z, "--vars", "x,y", "--relations", "9,0"}).code == 2);
}
