#include "lsite/cli.hpp"

#include <chrono>
#include <filesystem>
#include <sstream>

#include <CLI11.hpp>

#include "lsite/fixtures.hpp"
#include "lsite/serre.hpp"

namespace lsite {

namespace fx = fixtures;

// ---------------------------------------------------------------------------
// Fixture workspaces

std::vector<std::string> fixture_names() { return {"empty", "s1", "two-cycle", "zalg"}; }

Workspace fixture_workspace(const std::string& name, const Field& f) {
    Workspace ws;
    ws.field = f;
    if (name == "empty") return ws;
    if (name == "s1") {
        auto s = fx::s1(f);
        ws.categories["S1"] = s;
        auto inc1 = fx::s1_include_1(s), inc2 = fx::s1_include_2(s), q = fx::s1_quotient(s);
        ws.categories["S1.1"] = inc1.source();
        ws.categories["S1.2"] = inc2.source();
        ws.categories["S1/alpha"] = q.target();
        ws.functors.insert_or_assign("include_1", FunctorEntry{"S1.1", "S1", inc1});
        ws.functors.insert_or_assign("include_2", FunctorEntry{"S1.2", "S1", inc2});
        ws.functors.insert_or_assign("quotient", FunctorEntry{"S1", "S1/alpha", q});
        ws.functors.insert_or_assign("id", FunctorEntry{"S1", "S1", identity_functor(s)});
        ws.cover_systems["alpha"] = {"S1", fx::s1_alpha_system(s)};
        ws.cover_systems["supp1"] = {"S1", fx::s1_supp1_system(s)};
        ws.cover_systems["raw_singleton"] = {"S1", fx::s1_raw_singleton(s)};
        ws.cover_systems["empty_at_1"] = {"S1", fx::s1_empty_at_1(s)};
        ws.cover_systems["trivial"] = {"S1", trivial_topology(s)};
        ws.cover_systems["discrete"] = {"S1", discrete_topology(s)};
        ws.cover_systems["trivial_1"] = {"S1.1", trivial_topology(inc1.source())};
        ws.cover_systems["trivial_2"] = {"S1.2", trivial_topology(inc2.source())};
        CoverSystem qt{q.target(), {{zero_sieve(q.target(), 0)}, {representable_sieve(q.target(), 1)}}, Mode::up,
                       false};
        ws.cover_systems["quotient_target"] = {"S1/alpha", qt};
        ws.site_morphisms["include_1"] = {"include_1", "trivial_1", "alpha"};
        ws.site_morphisms["include_2"] = {"include_2", "trivial_2", "alpha"};
        ws.site_morphisms["quotient"] = {"quotient", "supp1", "quotient_target"};
        ws.site_morphisms["identity_alpha"] = {"id", "alpha", "alpha"};
        ws.modules.insert_or_assign("simple_1", ModuleEntry{"S1", fx::s1_simple(s, 0)});
        ws.modules.insert_or_assign("simple_2", ModuleEntry{"S1", fx::s1_simple(s, 1)});
        ws.modules.insert_or_assign("line", ModuleEntry{"S1", fx::s1_line(s)});
        ws.modules.insert_or_assign("rep_1", ModuleEntry{"S1", representable_module(s, 0)});
        ws.modules.insert_or_assign("rep_2", ModuleEntry{"S1", representable_module(s, 1)});
        return ws;
    }
    if (name == "two-cycle") {
        auto c = fx::two_cycle(f);
        ws.categories["C2"] = c;
        ws.cover_systems["trivial"] = {"C2", trivial_topology(c)};
        ws.cover_systems["discrete"] = {"C2", discrete_topology(c)};
        ws.modules.insert_or_assign("rep_1", ModuleEntry{"C2", representable_module(c, 0)});
        ws.modules.insert_or_assign("rep_2", ModuleEntry{"C2", representable_module(c, 1)});
        ws.functors.insert_or_assign("id", FunctorEntry{"C2", "C2", identity_functor(c)});
        return ws;
    }
    if (name == "zalg") {
        ws.graded_algebras["k[x]"] = polynomial_algebra(f, {"x"}, 4);
        ws.graded_algebras["k[y]"] = polynomial_algebra(f, {"y"}, 4);
        ws.graded_algebras["k[x,y]"] = polynomial_algebra(f, {"x", "y"}, 4);
        ws.graded_algebras["k[u,v]"] = polynomial_algebra(f, {"u", "v"}, 4);
        ws.graded_algebras["k[x0,x1]"] = polynomial_algebra(f, {"x0", "x1"}, 4);
        ws.graded_algebras["k[y0,y1]"] = polynomial_algebra(f, {"y0", "y1"}, 4);
        ws.graded_algebras["k[x,y]/(x^2)"] = monomial_quotient(ws.graded_algebras["k[x,y]"], {{2, 0}});
        ws.graded_algebras["k[x](2)"] = polynomial_algebra(f, {"x"}, 4, {2});
        return ws;
    }
    throw InputError("unknown fixture '" + name + "'");
}

// ---------------------------------------------------------------------------

namespace {

struct Options {
    std::string field;
    std::uint64_t cap_enum = Caps{}.enum_vectors;
    std::uint64_t cap_subspace = Caps{}.subspaces;
    std::uint64_t cap_submodule = Caps{}.submodule_total_dim;
    std::uint64_t cap_module = Caps{}.module_candidates;
    std::string out_file;
    bool json = false;
    bool timing = false;

    Caps caps() const { return {cap_enum, cap_subspace, cap_submodule, cap_module}; }
};

// Mutable state of one invocation.
struct Run {
    Options opt;
    std::string file;
    Workspace ws;
    Json report;
    std::string summary;
    std::vector<std::string> written;  // entities added to the workspace

    void load() {
        ws = load_workspace(file);
        if (!opt.field.empty() && !(parse_field(opt.field) == ws.field))
            throw InputError("--field " + opt.field + " does not match the workspace field " + ws.field.name());
        report["inputs"].push_back({{"kind", "workspace"}, {"hash", hash_hex(content_hash(workspace_to_json(ws)))}});
    }
    void input(const std::string& kind, const std::string& name, const Json& content) {
        report["inputs"].push_back({{"kind", kind}, {"name", name}, {"hash", hash_hex(content_hash(content))}});
    }
    void verdict(const std::string& key, bool v) { report["verdicts"][key] = v; }
    void counterexample(const std::string& scope, const Finding& f) {
        Json j = finding_to_json(f);
        j["scope"] = scope;
        report["counterexamples"].push_back(std::move(j));
    }
    void note(const std::string& s) { report["notes"].push_back(s); }
    void wrote(const std::string& kind, const std::string& name) {
        report["written"].push_back({{"kind", kind}, {"name", name}});
    }
    void save() {
        if (opt.out_file.empty()) return;
        save_workspace(ws, opt.out_file);
    }
};

Json caps_json(const Caps& c) {
    return {{"cap-enum", c.enum_vectors},
            {"cap-subspace", c.subspaces},
            {"cap-submodule", c.submodule_total_dim},
            {"cap-module", c.module_candidates}};
}

const CategoryPtr& system_category(Run& r, const std::string& name) {
    const auto& e = r.ws.cover_system(name);
    r.input("cover_system", name, system_to_json(e));
    return e.system.category;
}

std::string dims_string(const std::vector<std::size_t>& d) {
    std::string s;
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return "(" + s + ")";
}

Json sieve_summary(const Sieve& s) {
    Json j = sieve_to_json(s);
    std::vector<std::size_t> dims;
    for (const auto& c : s.components()) dims.push_back(c.dim());
    j["dims"] = dims;
    return j;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

std::size_t to_size(const std::string& s) {
    try {
        std::size_t used = 0;
        auto v = std::stoul(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw InputError("expected a non-negative integer, got '" + s + "'");
}

// "null:SYSTEM", "support:OBJ,OBJ", "simple"
ModulePredicate module_class(Run& r, const CategoryPtr& c, const std::string& spec) {
    if (spec == "simple") return is_simple_module(r.opt.caps());
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw InputError("module class '" + spec + "': expected null:, support: or simple");
    const std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
    if (kind == "null") {
        const auto& e = r.ws.cover_system(arg);
        if (e.system.category != c && !structurally_equal(*e.system.category, *c))
            throw InputError("module class '" + spec + "': system lives on another category");
        r.input("cover_system", arg, system_to_json(e));
        return null_class(std::make_shared<const CoveringOracle>(e.system, r.opt.caps()));
    }
    if (kind == "support") {
        std::vector<std::size_t> objs;
        for (const auto& o : split(arg, ',')) {
            try {
                objs.push_back(c->index(o));
            } catch (const UnknownObject& e) {
                throw InputError(e.what());
            }
        }
        return supported_on(objs);
    }
    throw InputError("module class '" + spec + "': unknown kind '" + kind + "'");
}

void add_report(Run& r, const std::string& scope, const PropertyReport& p) {
    r.verdict(scope, p.verdict);
    for (const auto& f : p.counterexamples) r.counterexample(scope, f);
    for (const auto& n : p.notes) r.note(scope + ": " + n);
    if (p.severity != "normal") r.report["severity"][scope] = p.severity;
}

bool all_verdicts(const Run& r) {
    if (!r.report.contains("verdicts")) return true;
    for (const auto& [k, v] : r.report["verdicts"].items())
        if (!v.get<bool>()) return false;
    return true;
}

WindowedZAlgebra window_of(Run& r, const std::string& name, long lo, long hi, std::string& label) {
    if (r.ws.zalgebras.count(name)) {
        const auto& z = r.ws.zalgebra(name);
        r.input("zalgebra", name, zalgebra_to_json(z));
        label = name;
        return z.algebra;
    }
    const auto& g = r.ws.graded_algebra(name);
    r.input("graded_algebra", name, graded_to_json(g));
    label = name + "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
    return from_graded(g, lo, hi);
}

}  // namespace

// ---------------------------------------------------------------------------

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    const auto started = std::chrono::steady_clock::now();
    Run r;
    CLI::App app{"Linear sites, topologies, sheaves and Z-algebras"};
    app.name("lsite");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--field", r.opt.field, "prime p or Q");
    app.add_option("--cap-enum", r.opt.cap_enum, "vectors per enumeration");
    app.add_option("--cap-subspace", r.opt.cap_subspace, "sieves or submodules per enumeration");
    app.add_option("--cap-submodule", r.opt.cap_submodule, "total dimension for Serre searches");
    app.add_option("--cap-module", r.opt.cap_module, "action tables per module enumeration");
    app.add_option("--out", r.opt.out_file, "write the updated workspace here");
    app.add_flag("--json", r.opt.json, "compact JSON, no summary on stderr");
    app.add_flag("--timing", r.opt.timing, "print the elapsed time on stderr");

    std::string a1, a2, a3, name, object, mode = "up", engine = "automatic", convention = "image";
    std::vector<std::string> properties, classes;
    std::string vars, weights, relations, w1, w2;
    long lo = 0, hi = 3, hi_max = 4;
    std::size_t bound = 1, max_len = 2, degree_bound = 4;
    bool with_witness = false;
    std::function<int()> action;

    auto file_arg = [&](CLI::App* s) { s->add_option("file", r.file, "workspace JSON")->required(); };

    auto* validate = app.add_subcommand("validate", "run every validator");
    file_arg(validate);
    validate->callback([&] {
        action = [&] {
            r.load();
            auto check = [&](const std::string& scope, const ValidationReport& v) {
                r.verdict(scope, v.valid);
                for (const auto& f : v.violations) r.counterexample(scope, f);
            };
            for (const auto& [n, c] : r.ws.categories) check("category:" + n, validate_category(*c));
            for (const auto& [n, f] : r.ws.functors) check("functor:" + n, validate_functor(f.functor));
            for (const auto& [n, m] : r.ws.modules) check("module:" + n, validate_module(m.module));
            for (const auto& [n, s] : r.ws.cover_systems) check("cover_system:" + n, validate_cover_system(s.system));
            for (const auto& [n, g] : r.ws.graded_algebras) check("graded_algebra:" + n, validate_graded(g));
            for (const auto& [n, z] : r.ws.zalgebras) check("zalgebra:" + n, validate_zalgebra(z.algebra));
            for (const auto& [n, s] : r.ws.site_morphisms)
                check("site_morphism:" + n, validate_site_morphism(r.ws.site_morphism(n)));
            const bool ok = all_verdicts(r);
            r.summary = ok ? "all entities valid" : "validation failures";
            return ok ? exit_pass : exit_fail;
        };
    });

    auto* axioms = app.add_subcommand("axioms", "localizing and topology axioms of a cover system");
    file_arg(axioms);
    axioms->add_option("system", a1)->required();
    axioms->callback([&] {
        action = [&] {
            r.load();
            system_category(r, a1);
            CoveringOracle o(r.ws.cover_system(a1).system, r.opt.caps());
            auto loc = check_localizing(o);
            r.verdict("localizing", loc.valid);
            for (const auto& f : loc.violations) r.counterexample("localizing", f);
            auto top = check_topology(o);
            r.verdict("topology", top.valid);
            for (const auto& f : top.violations)
                if (f.kind == "glue") r.counterexample("topology", f);
            r.summary = std::string("localizing: ") + (loc.valid ? "true" : "false") +
                        ", topology: " + (top.valid ? "true" : "false");
            return top.valid ? exit_pass : exit_fail;
        };
    });

    auto* closure = app.add_subcommand("closure", "covering sieves of a cover system");
    file_arg(closure);
    closure->add_option("system", a1)->required();
    closure->add_option("--object", object, "only this object");
    closure->add_option("--engine", engine, "automatic | exhaustive | minimal");
    closure->add_flag("--witness", with_witness, "derivation witnesses for every covering sieve");
    closure->callback([&] {
        action = [&] {
            r.load();
            const auto& c = system_category(r, a1);
            Engine e = engine == "exhaustive" ? Engine::exhaustive
                       : engine == "minimal"  ? Engine::minimal
                       : engine == "automatic"
                           ? Engine::automatic
                           : throw InputError("--engine: expected automatic, exhaustive or minimal");
            CoveringOracle o(r.ws.cover_system(a1).system, r.opt.caps(), e);
            r.report["engine"] = o.engine() == Engine::exhaustive ? "exhaustive"
                                 : o.engine() == Engine::minimal  ? "minimal"
                                                                  : "direct";
            r.report["principal"] = o.principal();
            Json objects = Json::object();
            for (std::size_t a = 0; a < c->size(); ++a) {
                if (!object.empty() && c->name(a) != object) continue;
                Json entry;
                if (o.principal()) entry["minimal_cover"] = sieve_summary(o.minimal_cover(a));
                Json list = Json::array();
                for (const auto& s : o.covering_sieves(a)) {
                    Json sj = sieve_summary(s);
                    if (with_witness) {
                        auto v = o.is_covering(s);
                        if (v.witness) sj["witness"] = witness_to_json(c, *v.witness);
                    }
                    list.push_back(std::move(sj));
                }
                entry["covering_count"] = list.size();
                entry["covering"] = std::move(list);
                objects[c->name(a)] = std::move(entry);
            }
            if (!object.empty() && objects.empty()) throw InputError("unknown object '" + object + "'");
            r.report["objects"] = std::move(objects);
            r.summary = "closure of " + a1 + " computed";
            return exit_pass;
        };
    });

    auto* tsite = app.add_subcommand("tensor-site", "tensor topology of two sites");
    file_arg(tsite);
    tsite->add_option("a_system", a1)->required();
    tsite->add_option("b_system", a2)->required();
    tsite->add_option("--name", name, "name of the new cover system");
    tsite->callback([&] {
        action = [&] {
            r.load();
            const auto& ca = system_category(r, a1);
            const auto& cb = system_category(r, a2);
            const auto& ta = r.ws.cover_system(a1).system;
            const auto& tb = r.ws.cover_system(a2).system;
            for (const auto& [n, t] : {std::pair{a1, &ta}, std::pair{a2, &tb}})
                if (!check_topology(*t, r.opt.caps()).valid)
                    throw PreconditionError("tensor-site: '" + n + "' is not a topology");
            auto ab = tensor_category(ca, cb);
            const std::string cname =
                r.ws.add_category(r.ws.category_name(ca) + "⊗" + r.ws.category_name(cb), ab);
            auto t = tensor_topology(ab, ta, tb, r.opt.caps());
            const std::string sname = name.empty() ? a1 + "⊗" + a2 : name;
            if (r.ws.cover_systems.count(sname)) throw InputError("cover system '" + sname + "' already exists");
            std::size_t nonfull = 0, total = 0;
            Json inventory = Json::array();
            for (std::size_t x = 0; x < ab->size(); ++x)
                for (const auto& s : t.basics[x]) {
                    ++total;
                    if (s.is_full()) continue;
                    ++nonfull;
                    inventory.push_back(sieve_summary(s));
                }
            r.report["objects"] = ab->size();
            r.report["basic_covers"] = nonfull;
            r.report["basic_covers_with_full"] = total;
            r.report["inventory"] = std::move(inventory);
            r.ws.cover_systems.emplace(sname, SystemEntry{cname, t});
            r.wrote("category", cname);
            r.wrote("cover_system", sname);
            r.verdict("topology", check_topology(t, r.opt.caps()).valid);
            r.report["output"] = system_to_json(r.ws.cover_system(sname));
            r.save();
            r.summary = "tensor site " + sname + ": " + std::to_string(ab->size()) + " objects, " +
                        std::to_string(nonfull) + " basic covers";
            return all_verdicts(r) ? exit_pass : exit_fail;
        };
    });

    auto parse_properties = [&]() {
        std::vector<Property> ps;
        for (const auto& p : properties) {
            for (const auto& q : split(p, ',')) ps.push_back(property_from_string(q));
        }
        return ps;
    };

    auto* cfun = app.add_subcommand("check-functor", "functoriality properties of a site morphism");
    file_arg(cfun);
    cfun->add_option("morphism", a1)->required();
    cfun->add_option("--property", properties, "G, F, FF, LC, continuous, cocontinuous (default: all)");
    cfun->add_option("--convention", convention, "LC convention: image | pointwise");
    cfun->callback([&] {
        action = [&] {
            r.load();
            auto m = r.ws.site_morphism(a1);
            r.input("site_morphism", a1, functor_to_json(r.ws.functor(r.ws.site_morphisms.at(a1).functor)));
            auto ps = parse_properties();
            if (ps.empty())
                ps = {Property::G, Property::F, Property::FF, Property::LC, Property::continuous,
                      Property::cocontinuous};
            if (convention != "image" && convention != "pointwise")
                throw InputError("--convention: expected image or pointwise");
            SiteOracles o(m, r.opt.caps());
            for (Property p : ps) {
                PropertyReport rep = p == Property::LC
                                         ? check_LC(o, convention == "image" ? LcConvention::image_generated
                                                                             : LcConvention::pointwise)
                                         : check_property(m, p, r.opt.caps());
                add_report(r, to_string(p), rep);
            }
            const bool ok = all_verdicts(r);
            r.summary = a1 + ": " + (ok ? "all requested properties hold" : "property failures");
            return ok ? exit_pass : exit_fail;
        };
    });

    auto* tfun = app.add_subcommand("tensor-functor", "preservation of properties under tensor products");
    file_arg(tfun);
    tfun->add_option("first", a1)->required();
    tfun->add_option("second", a2)->required();
    tfun->add_option("--property", properties, "G, F, FF, LC, cocontinuous (default: all five)");
    tfun->callback([&] {
        action = [&] {
            r.load();
            auto m1 = r.ws.site_morphism(a1), m2 = r.ws.site_morphism(a2);
            r.input("site_morphism", a1, functor_to_json(r.ws.functor(r.ws.site_morphisms.at(a1).functor)));
            r.input("site_morphism", a2, functor_to_json(r.ws.functor(r.ws.site_morphisms.at(a2).functor)));
            auto ps = parse_properties();
            if (ps.empty()) ps = {Property::G, Property::F, Property::FF, Property::LC, Property::cocontinuous};
            for (Property p : ps) add_report(r, to_string(p), verify_tensor_preservation(m1, m2, p, r.opt.caps()));
            const bool ok = all_verdicts(r);
            r.summary = a1 + " ⊗ " + a2 + ": " + (ok ? "preserved" : "not preserved");
            return ok ? exit_pass : exit_fail;
        };
    });

    auto* sheaf = app.add_subcommand("sheaf", "sheaf and null-presheaf tests");
    file_arg(sheaf);
    sheaf->add_option("module", a1)->required();
    sheaf->add_option("system", a2)->required();
    sheaf->callback([&] {
        action = [&] {
            r.load();
            const auto& m = r.ws.module(a1);
            r.input("module", a1, module_to_json(m));
            system_category(r, a2);
            CoveringOracle o(r.ws.cover_system(a2).system, r.opt.caps());
            const bool s = is_sheaf(m.module, o), n = is_null_presheaf(m.module, o);
            r.verdict("sheaf", s);
            r.report["null_presheaf"] = n;
            r.summary = a1 + ": sheaf " + (s ? "true" : "false") + ", null presheaf " + (n ? "true" : "false");
            return s ? exit_pass : exit_fail;
        };
    });

    auto* shfy = app.add_subcommand("sheafify", "sheafification with its unit");
    file_arg(shfy);
    shfy->add_option("module", a1)->required();
    shfy->add_option("system", a2)->required();
    shfy->add_option("--name", name, "name of the output module");
    shfy->callback([&] {
        action = [&] {
            r.load();
            const auto& m = r.ws.module(a1);
            r.input("module", a1, module_to_json(m));
            system_category(r, a2);
            CoveringOracle o(r.ws.cover_system(a2).system, r.opt.caps());
            auto sh = sheafify(m.module, o);
            const bool iso = is_isomorphism(sh.unit), null = is_null_presheaf(m.module, o);
            r.report["dims_before"] = m.module.dims();
            r.report["dims_after"] = sh.sheaf.dims();
            r.report["unit_iso"] = iso;
            r.report["null_presheaf"] = null;
            r.verdict("output_is_sheaf", is_sheaf(sh.sheaf, o));
            const std::string out_name = name.empty() ? a1 + "#" : name;
            if (r.ws.modules.count(out_name)) throw InputError("module '" + out_name + "' already exists");
            r.ws.modules.emplace(out_name, ModuleEntry{m.category, sh.sheaf});
            r.wrote("module", out_name);
            r.report["output"] = module_to_json(r.ws.module(out_name));
            r.save();
            r.summary = a1 + " " + dims_string(m.module.dims()) + " -> " + dims_string(sh.sheaf.dims()) +
                        ", unit iso " + (iso ? "true" : "false") + ", null presheaf " + (null ? "true" : "false");
            return all_verdicts(r) ? exit_pass : exit_fail;
        };
    });

    auto* serre = app.add_subcommand("serre", "Gabriel products and Serre hulls");
    serre->require_subcommand(1);
    serre->fallthrough();
    auto* gab = serre->add_subcommand("gabriel", "membership in W1 * W2");
    file_arg(gab);
    gab->add_option("module", a1)->required();
    gab->add_option("--w1", w1, "class: null:SYSTEM | support:OBJ,... | simple")->required();
    gab->add_option("--w2", w2, "class: null:SYSTEM | support:OBJ,... | simple")->required();
    gab->callback([&] {
        action = [&] {
            r.load();
            const auto& m = r.ws.module(a1);
            r.input("module", a1, module_to_json(m));
            auto p1 = module_class(r, m.module.category(), w1), p2 = module_class(r, m.module.category(), w2);
            r.report["classes"] = {w1, w2};
            const bool member = gabriel_product_member(m.module, p1, p2, r.opt.caps());
            r.verdict("member", member);
            r.summary = a1 + (member ? " lies in " : " does not lie in ") + w1 + " * " + w2;
            return member ? exit_pass : exit_fail;
        };
    });
    auto* hull = serre->add_subcommand("hull", "filtration with subquotients in the union of classes");
    file_arg(hull);
    hull->add_option("module", a1)->required();
    hull->add_option("--class", classes, "class: null:SYSTEM | support:OBJ,... | simple")->required();
    hull->add_option("--max-len", max_len, "longest filtration searched");
    hull->callback([&] {
        action = [&] {
            r.load();
            const auto& m = r.ws.module(a1);
            r.input("module", a1, module_to_json(m));
            ModulePredicate h = module_class(r, m.module.category(), classes.front());
            for (std::size_t i = 1; i < classes.size(); ++i)
                h = either(h, module_class(r, m.module.category(), classes[i]));
            r.report["classes"] = classes;
            r.report["max_len"] = max_len;
            auto chain = hull_filtration(m.module, h, max_len, r.opt.caps());
            r.verdict("member", chain.has_value());
            if (chain) {
                Json steps = Json::array();
                for (const auto& u : *chain) {
                    std::vector<std::size_t> d;
                    for (const auto& s : u) d.push_back(s.dim());
                    steps.push_back(d);
                }
                r.report["witnesses"].push_back({{"filtration_dims", steps}});
            }
            r.summary = a1 + (chain ? " lies in" : " does not lie in") + " the hull (length <= " +
                        std::to_string(max_len) + ")";
            return chain ? exit_pass : exit_fail;
        };
    });

    auto* en = app.add_subcommand("enumerate", "sieves on an object or modules up to a dimension bound");
    en->require_subcommand(1);
    en->fallthrough();
    auto* en_s = en->add_subcommand("sieves", "all sieves on an object");
    file_arg(en_s);
    en_s->add_option("category", a1)->required();
    en_s->add_option("object", object)->required();
    en_s->add_option("--system", a2, "mark the covering sieves of this system");
    en_s->callback([&] {
        action = [&] {
            r.load();
            const auto& c = r.ws.category(a1);
            r.input("category", a1, category_to_json(*c, &r.ws));
            std::size_t a = 0;
            try {
                a = c->index(object);
            } catch (const UnknownObject& e) {
                throw InputError(e.what());
            }
            std::optional<CoveringOracle> o;
            if (!a2.empty()) o.emplace(r.ws.cover_system(a2).system, r.opt.caps());
            Json list = Json::array();
            std::size_t covering = 0;
            for (const auto& s : enumerate_sieves(c, a, r.opt.caps())) {
                Json sj = sieve_summary(s);
                if (o) {
                    const bool cv = o->covers(s);
                    sj["covering"] = cv;
                    covering += cv;
                }
                list.push_back(std::move(sj));
            }
            r.report["count"] = list.size();
            if (o) r.report["covering_count"] = covering;
            r.report["sieves"] = std::move(list);
            r.summary = std::to_string(r.report["count"].get<std::size_t>()) + " sieves on " + object;
            return exit_pass;
        };
    });
    auto* en_m = en->add_subcommand("modules", "all modules with every space of dimension <= bound");
    file_arg(en_m);
    en_m->add_option("category", a1)->required();
    en_m->add_option("--bound", bound, "dimension bound");
    en_m->add_option("--prefix", name, "store the modules as PREFIX0, PREFIX1, ...");
    en_m->callback([&] {
        action = [&] {
            r.load();
            const auto& c = r.ws.category(a1);
            r.input("category", a1, category_to_json(*c, &r.ws));
            auto mods = enumerate_modules_bounded(c, bound, r.opt.caps());
            Json dims = Json::array();
            for (std::size_t i = 0; i < mods.size(); ++i) {
                dims.push_back(mods[i].dims());
                if (!name.empty()) {
                    const std::string n = name + std::to_string(i);
                    if (r.ws.modules.count(n)) throw InputError("module '" + n + "' already exists");
                    r.ws.modules.emplace(n, ModuleEntry{a1, mods[i]});
                    r.wrote("module", n);
                }
            }
            r.report["count"] = mods.size();
            r.report["dims"] = std::move(dims);
            r.save();
            r.summary = std::to_string(mods.size()) + " modules on " + a1 + " with dimensions <= " +
                        std::to_string(bound);
            return exit_pass;
        };
    });

    auto* z = app.add_subcommand("zalg", "graded algebras and Z-algebras");
    z->require_subcommand(1);
    z->fallthrough();

    auto new_name = [&](const auto& map, const std::string& fallback, const char* kind) {
        const std::string n = name.empty() ? fallback : name;
        if (map.count(n)) throw InputError(std::string(kind) + " '" + n + "' already exists");
        return n;
    };
    auto store_zalgebra = [&](const std::string& zname, const WindowedZAlgebra& w) {
        const std::string cname = r.ws.add_category(zname, w.category());
        r.ws.zalgebras.emplace(zname, ZAlgebraEntry{cname, w});
        r.wrote("category", cname);
        r.wrote("zalgebra", zname);
        std::vector<std::vector<std::size_t>> pieces;
        for (long n = w.lo(); n <= w.hi(); ++n) {
            std::vector<std::size_t> row;
            for (long m = w.lo(); m <= w.hi(); ++m) row.push_back(w.piece_dim(n, m));
            pieces.push_back(row);
        }
        r.report["piece_dims"] = pieces;
        r.report["window"] = {w.lo(), w.hi()};
    };

    auto* zpoly = z->add_subcommand("polynomial", "polynomial algebra or monomial quotient");
    file_arg(zpoly);
    zpoly->add_option("--vars", vars, "comma-separated variable names")->required();
    zpoly->add_option("--bound", degree_bound, "degree bound");
    zpoly->add_option("--weights", weights, "comma-separated positive weights");
    zpoly->add_option("--relations", relations, "monomials to strike, e.g. 2,0;1,1");
    zpoly->add_option("--name", name);
    zpoly->callback([&] {
        action = [&] {
            r.load();
            std::vector<std::size_t> w;
            for (const auto& s : split(weights, ',')) w.push_back(to_size(s));
            auto g = polynomial_algebra(r.ws.field, split(vars, ','), degree_bound, w);
            if (!relations.empty()) {
                std::vector<std::vector<std::size_t>> rel;
                for (const auto& mono : split(relations, ';')) {
                    std::vector<std::size_t> e;
                    for (const auto& s : split(mono, ',')) e.push_back(to_size(s));
                    rel.push_back(e);
                }
                g = monomial_quotient(g, rel);
            }
            const std::string n = new_name(r.ws.graded_algebras, "k[" + vars + "]", "graded algebra");
            r.ws.graded_algebras.emplace(n, g);
            r.wrote("graded_algebra", n);
            r.report["dims"] = g.dims;
            r.report["output"] = graded_to_json(g);
            r.save();
            r.summary = n + ": degree dims " + dims_string(g.dims);
            return exit_pass;
        };
    });

    auto* zfg = z->add_subcommand("from-graded", "a(n,m) = A_{n-m} on a window");
    file_arg(zfg);
    zfg->add_option("algebra", a1)->required();
    zfg->add_option("--lo", lo);
    zfg->add_option("--hi", hi);
    zfg->add_option("--name", name);
    zfg->callback([&] {
        action = [&] {
            r.load();
            const auto& g = r.ws.graded_algebra(a1);
            r.input("graded_algebra", a1, graded_to_json(g));
            auto w = from_graded(g, lo, hi);
            const std::string n = new_name(r.ws.zalgebras, "a(" + a1 + ")", "zalgebra");
            store_zalgebra(n, w);
            r.verdict("valid", validate_zalgebra(w).valid);
            r.save();
            r.summary = n + " on [" + std::to_string(lo) + "," + std::to_string(hi) + "]";
            return all_verdicts(r) ? exit_pass : exit_fail;
        };
    });

    auto* zseg = z->add_subcommand("segre", "cartesian (Segre) product");
    file_arg(zseg);
    zseg->add_option("first", a1)->required();
    zseg->add_option("second", a2)->required();
    zseg->add_option("--name", name);
    zseg->callback([&] {
        action = [&] {
            r.load();
            const auto& g1 = r.ws.graded_algebra(a1);
            const auto& g2 = r.ws.graded_algebra(a2);
            r.input("graded_algebra", a1, graded_to_json(g1));
            r.input("graded_algebra", a2, graded_to_json(g2));
            auto s = segre(g1, g2);
            const std::string n = new_name(r.ws.graded_algebras, a1 + "×" + a2, "graded algebra");
            r.ws.graded_algebras.emplace(n, s);
            r.wrote("graded_algebra", n);
            r.report["dims"] = s.dims;
            r.verdict("valid", validate_graded(s).valid);
            r.save();
            r.summary = n + ": degree dims " + dims_string(s.dims);
            return all_verdicts(r) ? exit_pass : exit_fail;
        };
    });

    auto* zdiag = z->add_subcommand("diagonal", "diagonal Z-algebra with its embedding");
    file_arg(zdiag);
    zdiag->add_option("first", a1)->required();
    zdiag->add_option("second", a2)->required();
    zdiag->add_option("--lo", lo, "window for graded inputs");
    zdiag->add_option("--hi", hi, "window for graded inputs");
    zdiag->add_option("--name", name);
    zdiag->callback([&] {
        action = [&] {
            r.load();
            std::string l1, l2;
            auto za = window_of(r, a1, lo, hi, l1), zb = window_of(r, a2, lo, hi, l2);
            auto d = diagonal(za, zb);
            const std::string n = new_name(r.ws.zalgebras, "(" + l1 + "⊗" + l2 + ")Δ", "zalgebra");
            store_zalgebra(n, d.algebra);
            const std::string ca = r.ws.add_category(n + ".a", za.category());
            const std::string cb = r.ws.add_category(n + ".b", zb.category());
            const std::string tn = r.ws.add_category(ca + "⊗" + cb, d.tensor);
            if (r.ws.functors.count(n + ".delta")) throw InputError("functor '" + n + ".delta' already exists");
            r.ws.functors.emplace(n + ".delta", FunctorEntry{r.ws.zalgebras.at(n).category, tn, d.embedding});
            r.wrote("category", tn);
            r.wrote("functor", n + ".delta");
            r.verdict("generated_in_degree_one", check_generated_in_degree_one(d.algebra));
            r.save();
            r.summary = n + " built";
            return exit_pass;
        };
    });

    auto* ztails = z->add_subcommand("tails", "tails cover system");
    file_arg(ztails);
    ztails->add_option("zalgebra", a1)->required();
    ztails->add_option("--mode", mode, "up | upglue");
    ztails->add_option("--name", name);
    ztails->callback([&] {
        action = [&] {
            r.load();
            const auto& e = r.ws.zalgebra(a1);
            r.input("zalgebra", a1, zalgebra_to_json(e));
            Mode md = mode_from_string(mode);
            if (md == Mode::raw) throw InputError("--mode: expected up or upglue");
            auto t = tails_system(e.algebra, md);
            const std::string n = new_name(r.ws.cover_systems, "tails(" + a1 + ")", "cover system");
            r.ws.cover_systems.emplace(n, SystemEntry{e.category, t});
            r.wrote("cover_system", n);
            r.report["output"] = system_to_json(r.ws.cover_system(n));
            r.save();
            r.summary = n + " written";
            return exit_pass;
        };
    });

    auto* zcheck = z->add_subcommand("check-delta", "(LC) for the diagonal embedding on a window");
    file_arg(zcheck);
    zcheck->add_option("first", a1)->required();
    zcheck->add_option("second", a2)->required();
    zcheck->add_option("--lo", lo, "window for graded inputs");
    zcheck->add_option("--hi", hi, "window for graded inputs");
    zcheck->callback([&] {
        action = [&] {
            r.load();
            std::string l1, l2;
            auto za = window_of(r, a1, lo, hi, l1), zb = window_of(r, a2, lo, hi, l2);
            auto rep = check_delta_LC_on_window(za, zb, r.opt.caps());
            add_report(r, "LC", rep);
            r.report["window"] = {za.lo(), za.hi()};
            r.report["label"] = "window-limited";
            r.summary = "Delta for " + l1 + " ⊗ " + l2 + ": " + (rep.verdict ? "pass" : "fail") + " (window-limited)";
            return rep.verdict ? exit_pass : exit_fail;
        };
    });

    auto* zsweep = z->add_subcommand("window-sweep", "check-delta over the windows [lo, lo+2 .. hi-max]");
    file_arg(zsweep);
    zsweep->add_option("first", a1)->required();
    zsweep->add_option("second", a2)->required();
    zsweep->add_option("--lo", lo);
    zsweep->add_option("--hi-max", hi_max)->required();
    zsweep->callback([&] {
        action = [&] {
            r.load();
            const auto& g1 = r.ws.graded_algebra(a1);
            const auto& g2 = r.ws.graded_algebra(a2);
            r.input("graded_algebra", a1, graded_to_json(g1));
            r.input("graded_algebra", a2, graded_to_json(g2));
            Json rows = Json::array();
            std::string trend;
            for (const auto& row : window_sweep(g1, g2, lo, hi_max, r.opt.caps())) {
                rows.push_back({{"window", {row.lo, row.hi}},
                                {"verdict", row.verdict},
                                {"counterexamples", row.counterexamples}});
                trend += row.verdict ? "P" : "F";
            }
            r.report["rows"] = std::move(rows);
            r.report["trend"] = trend;
            r.report["label"] = "window-limited";
            r.summary = "window sweep " + a1 + " ⊗ " + a2 + ": " + trend;
            return exit_pass;
        };
    });

    auto* fix = app.add_subcommand("fixture", "write a built-in workspace");
    fix->add_option("name", a1, "empty | s1 | two-cycle | zalg")->required();
    fix->callback([&] {
        action = [&] {
            r.ws = fixture_workspace(a1, r.opt.field.empty() ? Field::prime(2) : parse_field(r.opt.field));
            r.report["output"] = workspace_to_json(r.ws);
            r.report["inputs"].push_back({{"kind", "fixture"}, {"name", a1}});
            r.save();
            r.summary = "fixture " + a1 + " over " + r.ws.field.name();
            return exit_pass;
        };
    });

    auto emit = [&](int code) {
        r.report["exit_code"] = code;
        if (r.opt.json)
            out << r.report.dump() << "\n";
        else
            out << r.report.dump(2) << "\n";
        if (!r.opt.json && !r.summary.empty()) err << r.summary << "\n";
        if (r.opt.timing) {
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                                  started)
                                .count();
            err << "elapsed: " << ms << " ms\n";
        }
        return code;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return exit_input;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_input;
    }

    std::string command;
    for (CLI::App* s = &app; !s->get_subcommands().empty();) {
        s = s->get_subcommands().front();
        command += (command.empty() ? "" : " ") + s->get_name();
    }
    r.report["command"] = command;
    r.report["inputs"] = Json::array();
    r.report["verdicts"] = Json::object();
    r.report["counterexamples"] = Json::array();
    r.report["witnesses"] = Json::array();
    r.report["notes"] = Json::array();
    r.report["caps"] = caps_json(r.opt.caps());

    try {
        return emit(action());
    } catch (const CapExceeded& e) {
        r.report["error"] = {{"type", "cap"}, {"cap", e.cap()}, {"limit", e.limit()}, {"requested", e.requested()},
                             {"message", e.what()}};
        r.summary = e.what();
        return emit(exit_cap);
    } catch (const PreconditionError& e) {
        r.report["error"] = {{"type", "precondition"}, {"message", e.what()}};
        r.summary = std::string("precondition failed: ") + e.what();
        return emit(exit_input);
    } catch (const Error& e) {
        r.report["error"] = {{"type", "input"}, {"message", e.what()}};
        r.summary = std::string("error: ") + e.what();
        return emit(exit_input);
    } catch (const Json::exception& e) {
        r.report["error"] = {{"type", "input"}, {"message", e.what()}};
        r.summary = std::string("error: ") + e.what();
        return emit(exit_input);
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"lsite"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace lsite
