#include "lsite/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace lsite {

namespace {

const Json& need(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
    return j.at(key);
}

std::size_t need_size(const Json& j, const char* key, const std::string& where) {
    const Json& v = need(j, key, where);
    if (!v.is_number_unsigned()) throw InputError(where + ": '" + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

long need_long(const Json& j, const char* key, const std::string& where) {
    const Json& v = need(j, key, where);
    if (!v.is_number_integer()) throw InputError(where + ": '" + key + "' must be an integer");
    return v.get<long>();
}

std::string need_string(const Json& j, const char* key, const std::string& where) {
    const Json& v = need(j, key, where);
    if (!v.is_string()) throw InputError(where + ": '" + key + "' must be a string");
    return v.get<std::string>();
}

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const char* kind) {
    auto it = m.find(name);
    if (it == m.end()) throw InputError(std::string("unknown ") + kind + " '" + name + "'");
    return it->second;
}

Json subspace_to_json(const Subspace& s) { return matrix_to_json(s.basis()); }

Subspace subspace_from_json(const Json& j, const Field& f, std::size_t ambient) {
    if (!j.is_array()) throw InputError("subspace: expected an array of basis rows");
    if (j.empty()) return Subspace(f, ambient);
    return Subspace::span(matrix_from_json(j, f, j.size(), ambient));
}

}  // namespace

// ---------------------------------------------------------------------------

Json field_to_json(const Field& f) {
    if (f.is_prime()) return f.characteristic();
    return "Q";
}

Field parse_field(const std::string& s) {
    if (s == "Q" || s == "q") return Field::rationals();
    std::size_t used = 0;
    unsigned long p = 0;
    try {
        p = std::stoul(s, &used);
    } catch (const std::exception&) {
        throw InputError("field: expected a prime or Q, got '" + s + "'");
    }
    if (used != s.size()) throw InputError("field: expected a prime or Q, got '" + s + "'");
    try {
        return Field::prime(static_cast<std::uint32_t>(p));
    } catch (const Error& e) {
        throw InputError(std::string("field: ") + e.what());
    }
}

Field field_from_json(const Json& j) {
    if (j.is_number_unsigned()) return parse_field(std::to_string(j.get<unsigned long>()));
    if (j.is_string()) return parse_field(j.get<std::string>());
    throw InputError("field: expected a prime or \"Q\"");
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m.field().is_prime())
                row.push_back(m.get_int(r, c));
            else
                row.push_back(to_string(m.get(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j, const Field& f, std::size_t rows, std::size_t cols) {
    Matrix m(f, rows, cols);
    if (!j.is_array()) throw InputError("matrix: expected an array of rows");
    if (rows == 0 && j.empty()) return m;
    if (j.size() != rows)
        throw InputError("matrix: expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    for (std::size_t r = 0; r < rows; ++r) {
        const Json& row = j[r];
        if (!row.is_array() || row.size() != cols)
            throw InputError("matrix: row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) {
            const Json& e = row[c];
            if (e.is_number_integer()) {
                m.set(r, c, Rational(e.get<std::int64_t>()));
            } else if (e.is_string()) {
                Rational q;
                try {
                    q = parse_rational(e.get<std::string>());
                } catch (const std::exception&) {
                    throw InputError("matrix: bad entry '" + e.get<std::string>() + "'");
                }
                m.set(r, c, q);
            } else {
                throw InputError("matrix: entries must be integers or rational strings");
            }
        }
    }
    return m;
}

// ---------------------------------------------------------------------------

Json category_to_json(const FiniteLinearCategory& c, const Workspace* ws) {
    const std::size_t n = c.size();
    Json j;
    j["objects"] = c.objects();
    Json dims = Json::array();
    bool any_label = false;
    Json labels = Json::array();
    for (std::size_t x = 0; x < n; ++x) {
        Json row = Json::array(), lrow = Json::array();
        for (std::size_t y = 0; y < n; ++y) {
            row.push_back(c.hom_dim(x, y));
            lrow.push_back(c.labels(x, y));
            any_label = any_label || !c.labels(x, y).empty();
        }
        dims.push_back(std::move(row));
        labels.push_back(std::move(lrow));
    }
    j["hom_dims"] = std::move(dims);
    if (any_label) j["labels"] = std::move(labels);
    Json ids = Json::array();
    for (std::size_t a = 0; a < n; ++a) ids.push_back(matrix_to_json(c.identity(a)).at(0));
    j["identities"] = std::move(ids);
    Json comp = Json::array();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const Matrix& t = c.table(x, y, z);
                if (t.empty() || t.is_zero()) continue;
                comp.push_back({{"x", c.name(x)}, {"y", c.name(y)}, {"z", c.name(z)}, {"table", matrix_to_json(t)}});
            }
    j["composition"] = std::move(comp);
    if (ws && c.factors()) {
        const std::string a = ws->category_name(c.factors()->a), b = ws->category_name(c.factors()->b);
        if (!a.empty() && !b.empty()) j["factors"] = {a, b};
    }
    return j;
}

namespace {

CategoryData category_data_from_json(const Json& j, const Field& f, const std::string& where) {
    CategoryData d;
    d.field = f;
    const Json& objs = need(j, "objects", where);
    if (!objs.is_array()) throw InputError(where + ": objects must be an array");
    for (const auto& o : objs) {
        if (!o.is_string()) throw InputError(where + ": object names must be strings");
        d.objects.push_back(o.get<std::string>());
    }
    const std::size_t n = d.objects.size();
    const Json& dims = need(j, "hom_dims", where);
    if (!dims.is_array() || dims.size() != n) throw InputError(where + ": hom_dims must be n x n");
    for (const auto& row : dims) {
        if (!row.is_array() || row.size() != n) throw InputError(where + ": hom_dims must be n x n");
        for (const auto& v : row) {
            if (!v.is_number_unsigned()) throw InputError(where + ": hom_dims entries must be non-negative");
            d.hom_dims.push_back(v.get<std::size_t>());
        }
    }
    auto dim = [&](std::size_t a, std::size_t b) { return d.hom_dims[a * n + b]; };
    if (j.contains("labels")) {
        const Json& l = j.at("labels");
        if (!l.is_array() || l.size() != n) throw InputError(where + ": labels must be n x n");
        for (const auto& row : l) {
            if (!row.is_array() || row.size() != n) throw InputError(where + ": labels must be n x n");
            for (const auto& cell : row) d.labels.push_back(cell.get<std::vector<std::string>>());
        }
    }
    auto index = [&](const Json& v) {
        if (!v.is_string()) throw InputError(where + ": object references must be names");
        for (std::size_t i = 0; i < n; ++i)
            if (d.objects[i] == v.get<std::string>()) return i;
        throw InputError(where + ": unknown object '" + v.get<std::string>() + "'");
    };
    const Json& ids = need(j, "identities", where);
    if (!ids.is_array() || ids.size() != n) throw InputError(where + ": one identity per object");
    for (std::size_t a = 0; a < n; ++a)
        d.identities.push_back(matrix_from_json(Json::array({ids[a]}), f, 1, dim(a, a)));
    d.composition.resize(n * n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                d.composition[(x * n + y) * n + z] = Matrix(f, dim(y, z) * dim(x, y), dim(x, z));
    const Json& comp = need(j, "composition", where);
    if (!comp.is_array()) throw InputError(where + ": composition must be an array");
    for (const auto& e : comp) {
        const std::size_t x = index(need(e, "x", where)), y = index(need(e, "y", where)),
                          z = index(need(e, "z", where));
        d.composition[(x * n + y) * n + z] =
            matrix_from_json(need(e, "table", where), f, dim(y, z) * dim(x, y), dim(x, z));
    }
    return d;
}

std::vector<std::size_t> object_map_from_json(const Json& j, const FiniteLinearCategory& s,
                                              const FiniteLinearCategory& t, const std::string& where) {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < s.size(); ++a) {
        if (!j.is_object() || !j.contains(s.name(a)))
            throw InputError(where + ": object '" + s.name(a) + "' is not mapped");
        const Json& v = j.at(s.name(a));
        if (!v.is_string()) throw InputError(where + ": object images must be names");
        try {
            out.push_back(t.index(v.get<std::string>()));
        } catch (const UnknownObject& e) {
            throw InputError(where + ": " + e.what());
        }
    }
    return out;
}

std::size_t object_index(const FiniteLinearCategory& c, const Json& v, const std::string& where) {
    if (!v.is_string()) throw InputError(where + ": object references must be names");
    try {
        return c.index(v.get<std::string>());
    } catch (const UnknownObject& e) {
        throw InputError(where + ": " + e.what());
    }
}

}  // namespace

Json functor_to_json(const FunctorEntry& e) {
    const auto& f = e.functor;
    const auto& s = *f.source();
    const auto& t = *f.target();
    Json j;
    j["source"] = e.source;
    j["target"] = e.target;
    Json objs = Json::object();
    for (std::size_t a = 0; a < s.size(); ++a) objs[s.name(a)] = t.name(f.object(a));
    j["objects"] = std::move(objs);
    Json maps = Json::array();
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b) {
            const Matrix& m = f.hom_map(a, b);
            if (m.empty() || m.is_zero()) continue;
            maps.push_back({{"src", s.name(a)}, {"dst", s.name(b)}, {"matrix", matrix_to_json(m)}});
        }
    j["hom_maps"] = std::move(maps);
    return j;
}

Json module_to_json(const ModuleEntry& e) {
    const auto& m = e.module;
    const auto& c = *m.category();
    Json j;
    j["category"] = e.category;
    Json dims = Json::object();
    for (std::size_t a = 0; a < c.size(); ++a) dims[c.name(a)] = m.dim(a);
    j["dims"] = std::move(dims);
    Json act = Json::array();
    for (std::size_t b = 0; b < c.size(); ++b)
        for (std::size_t a = 0; a < c.size(); ++a) {
            if (c.hom_dim(b, a) == 0 || m.dim(a) == 0 || m.dim(b) == 0) continue;
            Json maps = Json::array();
            for (std::size_t i = 0; i < c.hom_dim(b, a); ++i) maps.push_back(matrix_to_json(m.basis_action(b, a, i)));
            act.push_back({{"src", c.name(b)}, {"dst", c.name(a)}, {"maps", std::move(maps)}});
        }
    j["action"] = std::move(act);
    return j;
}

Json sieve_to_json(const Sieve& s) {
    const auto& c = *s.category();
    Json comps = Json::object();
    for (std::size_t b = 0; b < c.size(); ++b)
        if (!s.component(b).is_zero()) comps[c.name(b)] = subspace_to_json(s.component(b));
    return {{"target", c.name(s.target())}, {"components", std::move(comps)}};
}

Sieve sieve_from_json(const Json& j, const CategoryPtr& c, std::size_t target) {
    const std::string where = "sieve on " + c->name(target);
    const Json& comps = need(j, "components", where);
    if (!comps.is_object()) throw InputError(where + ": components must be an object keyed by object name");
    for (const auto& [k, v] : comps.items()) object_index(*c, Json(k), where);
    std::vector<Subspace> out;
    for (std::size_t b = 0; b < c->size(); ++b) {
        const std::size_t d = c->hom_dim(b, target);
        out.push_back(comps.contains(c->name(b)) ? subspace_from_json(comps.at(c->name(b)), c->field(), d)
                                                 : Subspace(c->field(), d));
    }
    return Sieve(c, target, std::move(out));
}

Json system_to_json(const SystemEntry& e) {
    const auto& t = e.system;
    const auto& c = *t.category;
    Json basics = Json::object();
    for (std::size_t a = 0; a < c.size(); ++a) {
        Json list = Json::array();
        for (const auto& s : t.basics[a]) list.push_back(sieve_to_json(s)["components"]);
        basics[c.name(a)] = std::move(list);
    }
    return {{"category", e.category}, {"mode", to_string(t.mode)}, {"certified", t.certified},
            {"basics", std::move(basics)}};
}

Json graded_to_json(const GradedAlgebra& g) {
    Json j;
    j["bound"] = g.bound;
    j["dims"] = g.dims;
    j["labels"] = g.labels;
    j["unit"] = g.dims.empty() || g.dims[0] == 0 ? Json::array() : matrix_to_json(g.unit).at(0);
    Json mult = Json::array();
    for (std::size_t n = 0; n <= g.bound; ++n)
        for (std::size_t m = 0; n + m <= g.bound; ++m) {
            const Matrix& t = g.table(n, m);
            if (t.empty() || t.is_zero()) continue;
            mult.push_back({{"n", n}, {"m", m}, {"table", matrix_to_json(t)}});
        }
    j["mult"] = std::move(mult);
    if (!g.variables.empty() || !g.monomials.empty()) {
        j["variables"] = g.variables;
        j["weights"] = g.weights;
        j["monomials"] = g.monomials;
    }
    return j;
}

Json zalgebra_to_json(const ZAlgebraEntry& z) {
    return {{"category", z.category}, {"lo", z.algebra.lo()}, {"hi", z.algebra.hi()}};
}

Json finding_to_json(const Finding& f) {
    Json data = Json::array();
    for (const auto& [name, m] : f.data) data.push_back({{"name", name}, {"value", matrix_to_json(m)}});
    return {{"kind", f.kind}, {"objects", f.objects}, {"data", std::move(data)}, {"detail", f.detail}};
}

Json witness_to_json(const CategoryPtr& c, const Witness& w) {
    Json steps = Json::array();
    for (const auto& s : w.steps) {
        Json j{{"kind", to_string(s.kind)},
               {"object", c->name(s.object)},
               {"sieve", sieve_to_json(s.sieve)["components"]},
               {"round", s.round},
               {"via", s.via},
               {"premises", s.premises}};
        if (s.cover) j["cover"] = sieve_to_json(*s.cover)["components"];
        steps.push_back(std::move(j));
    }
    return steps;
}

// ---------------------------------------------------------------------------

const CategoryPtr& Workspace::category(const std::string& name) const { return lookup(categories, name, "category"); }
const FunctorEntry& Workspace::functor(const std::string& name) const { return lookup(functors, name, "functor"); }
const ModuleEntry& Workspace::module(const std::string& name) const { return lookup(modules, name, "module"); }
const SystemEntry& Workspace::cover_system(const std::string& name) const {
    return lookup(cover_systems, name, "cover system");
}
const GradedAlgebra& Workspace::graded_algebra(const std::string& name) const {
    return lookup(graded_algebras, name, "graded algebra");
}
const ZAlgebraEntry& Workspace::zalgebra(const std::string& name) const { return lookup(zalgebras, name, "zalgebra"); }

SiteMorphism Workspace::site_morphism(const std::string& name) const {
    const auto& e = lookup(site_morphisms, name, "site morphism");
    return {functor(e.functor).functor, cover_system(e.source).system, cover_system(e.target).system};
}

std::string Workspace::category_name(const CategoryPtr& c) const {
    for (const auto& [name, p] : categories)
        if (p == c) return name;
    for (const auto& [name, p] : categories)
        if (structurally_equal(*p, *c)) return name;
    return {};
}

std::string Workspace::add_category(const std::string& name, const CategoryPtr& c) {
    for (const auto& [n, p] : categories)
        if (p == c) return n;
    if (categories.count(name)) throw InputError("category name '" + name + "' is already taken");
    categories.emplace(name, c);
    return name;
}

Json workspace_to_json(const Workspace& ws) {
    Json j;
    j["version"] = ws.version;
    j["field"] = field_to_json(ws.field);
    Json cats = Json::object(), funs = Json::object(), mods = Json::object(), syss = Json::object(),
         gras = Json::object(), zals = Json::object(), sms = Json::object();
    for (const auto& [name, c] : ws.categories) cats[name] = category_to_json(*c, &ws);
    for (const auto& [name, f] : ws.functors) funs[name] = functor_to_json(f);
    for (const auto& [name, m] : ws.modules) mods[name] = module_to_json(m);
    for (const auto& [name, s] : ws.cover_systems) syss[name] = system_to_json(s);
    for (const auto& [name, g] : ws.graded_algebras) gras[name] = graded_to_json(g);
    for (const auto& [name, z] : ws.zalgebras) zals[name] = zalgebra_to_json(z);
    for (const auto& [name, s] : ws.site_morphisms)
        sms[name] = {{"functor", s.functor}, {"source", s.source}, {"target", s.target}};
    j["categories"] = std::move(cats);
    j["functors"] = std::move(funs);
    j["modules"] = std::move(mods);
    j["cover_systems"] = std::move(syss);
    j["graded_algebras"] = std::move(gras);
    j["zalgebras"] = std::move(zals);
    j["site_morphisms"] = std::move(sms);
    return j;
}

namespace {

const Json& section(const Json& j, const char* key) {
    static const Json empty = Json::object();
    if (!j.contains(key)) return empty;
    if (!j.at(key).is_object()) throw InputError(std::string("workspace: '") + key + "' must be an object");
    return j.at(key);
}

void load_categories(Workspace& ws, const Json& cats) {
    std::map<std::string, const Json*> pending;
    for (const auto& [name, c] : cats.items()) pending.emplace(name, &c);
    while (!pending.empty()) {
        bool progressed = false;
        for (auto it = pending.begin(); it != pending.end();) {
            const std::string& name = it->first;
            const Json& c = *it->second;
            const std::string where = "category '" + name + "'";
            CategoryData d = category_data_from_json(c, ws.field, where);
            if (!c.contains("factors")) {
                ws.categories.emplace(name, make_category(std::move(d)));
            } else {
                const Json& fac = c.at("factors");
                if (!fac.is_array() || fac.size() != 2 || !fac[0].is_string() || !fac[1].is_string())
                    throw InputError(where + ": factors must be two category names");
                const std::string a = fac[0].get<std::string>(), b = fac[1].get<std::string>();
                if (!cats.contains(a) || !cats.contains(b)) throw InputError(where + ": unknown factor");
                if (!ws.categories.count(a) || !ws.categories.count(b)) {
                    ++it;
                    continue;
                }
                auto t = tensor_category(ws.categories.at(a), ws.categories.at(b));
                if (!structurally_equal(*t, FiniteLinearCategory(d)))
                    throw InputError(where + ": data differ from the tensor of its factors");
                // keep the stored labels
                ws.categories.emplace(name, std::make_shared<const FiniteLinearCategory>(
                                                std::move(d), FiniteLinearCategory::Factors{t->factors()->a,
                                                                                            t->factors()->b}));
            }
            it = pending.erase(it);
            progressed = true;
        }
        if (!progressed) throw InputError("workspace: cyclic category factors");
    }
}

void check_field(const Workspace& ws, const CategoryPtr& c, const std::string& where) {
    if (!(c->field() == ws.field)) throw FieldMismatch(where + ": field mismatch");
}

}  // namespace

Workspace workspace_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("workspace: expected a JSON object");
    Workspace ws;
    ws.version = need_string(j, "version", "workspace");
    if (ws.version != kWorkspaceVersion) throw InputError("workspace: unsupported version '" + ws.version + "'");
    ws.field = field_from_json(need(j, "field", "workspace"));
    load_categories(ws, section(j, "categories"));

    for (const auto& [name, f] : section(j, "functors").items()) {
        const std::string where = "functor '" + name + "'";
        FunctorEntry e{need_string(f, "source", where), need_string(f, "target", where),
                       identity_functor(ws.category(need_string(f, "source", where)))};
        const auto& s = ws.category(e.source);
        const auto& t = ws.category(e.target);
        auto objs = object_map_from_json(need(f, "objects", where), *s, *t, where);
        const std::size_t n = s->size();
        std::vector<Matrix> maps;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                maps.emplace_back(ws.field, t->hom_dim(objs[a], objs[b]), s->hom_dim(a, b));
        for (const auto& m : need(f, "hom_maps", where)) {
            const std::size_t a = object_index(*s, need(m, "src", where), where),
                              b = object_index(*s, need(m, "dst", where), where);
            maps[a * n + b] =
                matrix_from_json(need(m, "matrix", where), ws.field, t->hom_dim(objs[a], objs[b]), s->hom_dim(a, b));
        }
        e.functor = LinearFunctor(s, t, std::move(objs), std::move(maps));
        ws.functors.emplace(name, std::move(e));
    }

    for (const auto& [name, m] : section(j, "modules").items()) {
        const std::string where = "module '" + name + "'";
        const std::string cname = need_string(m, "category", where);
        const auto& c = ws.category(cname);
        const std::size_t n = c->size();
        const Json& dj = need(m, "dims", where);
        std::vector<std::size_t> dims;
        for (std::size_t a = 0; a < n; ++a) {
            if (!dj.contains(c->name(a)) || !dj.at(c->name(a)).is_number_unsigned())
                throw InputError(where + ": missing dimension at '" + c->name(a) + "'");
            dims.push_back(dj.at(c->name(a)).get<std::size_t>());
        }
        std::vector<std::vector<Matrix>> action(n * n);
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t a = 0; a < n; ++a)
                action[b * n + a].assign(c->hom_dim(b, a), Matrix(ws.field, dims[b], dims[a]));
        for (const auto& e : need(m, "action", where)) {
            const std::size_t b = object_index(*c, need(e, "src", where), where),
                              a = object_index(*c, need(e, "dst", where), where);
            const Json& maps = need(e, "maps", where);
            if (!maps.is_array() || maps.size() != c->hom_dim(b, a))
                throw InputError(where + ": one matrix per basis morphism");
            for (std::size_t i = 0; i < maps.size(); ++i)
                action[b * n + a][i] = matrix_from_json(maps[i], ws.field, dims[b], dims[a]);
        }
        ws.modules.emplace(name, ModuleEntry{cname, PresheafModule(c, std::move(dims), std::move(action))});
    }

    for (const auto& [name, s] : section(j, "cover_systems").items()) {
        const std::string where = "cover system '" + name + "'";
        const std::string cname = need_string(s, "category", where);
        const auto& c = ws.category(cname);
        CoverSystem t{c, std::vector<std::vector<Sieve>>(c->size()), Mode::up, false};
        try {
            t.mode = mode_from_string(need_string(s, "mode", where));
        } catch (const Error& e) {
            throw InputError(where + ": " + e.what());
        }
        if (s.contains("certified")) t.certified = s.at("certified").get<bool>();
        const Json& basics = need(s, "basics", where);
        if (!basics.is_object()) throw InputError(where + ": basics must be keyed by object name");
        for (const auto& [obj, list] : basics.items()) {
            const std::size_t a = object_index(*c, Json(obj), where);
            for (const auto& sj : list) t.basics[a].push_back(sieve_from_json({{"components", sj}}, c, a));
        }
        ws.cover_systems.emplace(name, SystemEntry{cname, std::move(t)});
    }

    for (const auto& [name, g] : section(j, "graded_algebras").items()) {
        const std::string where = "graded algebra '" + name + "'";
        GradedAlgebra a;
        a.field = ws.field;
        a.bound = need_size(g, "bound", where);
        a.dims = need(g, "dims", where).get<std::vector<std::size_t>>();
        if (a.dims.size() != a.bound + 1) throw InputError(where + ": one dimension per degree");
        a.labels = g.contains("labels") ? g.at("labels").get<std::vector<std::vector<std::string>>>()
                                        : std::vector<std::vector<std::string>>(a.bound + 1);
        if (a.labels.size() != a.bound + 1) throw InputError(where + ": one label list per degree");
        const Json& unit = need(g, "unit", where);
        a.unit = a.dims[0] == 0 ? Matrix(ws.field, 1, 0) : matrix_from_json(Json::array({unit}), ws.field, 1, a.dims[0]);
        a.mult.resize((a.bound + 1) * (a.bound + 1));
        for (std::size_t n = 0; n <= a.bound; ++n)
            for (std::size_t m = 0; n + m <= a.bound; ++m)
                a.mult[n * (a.bound + 1) + m] = Matrix(ws.field, a.dims[n] * a.dims[m], a.dims[n + m]);
        for (const auto& e : need(g, "mult", where)) {
            const std::size_t n = need_size(e, "n", where), m = need_size(e, "m", where);
            if (n + m > a.bound) throw InputError(where + ": product beyond the degree bound");
            a.mult[n * (a.bound + 1) + m] =
                matrix_from_json(need(e, "table", where), ws.field, a.dims[n] * a.dims[m], a.dims[n + m]);
        }
        if (g.contains("variables")) {
            a.variables = g.at("variables").get<std::vector<std::string>>();
            a.weights = need(g, "weights", where).get<std::vector<std::size_t>>();
            a.monomials = need(g, "monomials", where).get<std::vector<std::vector<std::vector<std::size_t>>>>();
        }
        ws.graded_algebras.emplace(name, std::move(a));
    }

    for (const auto& [name, z] : section(j, "zalgebras").items()) {
        const std::string where = "zalgebra '" + name + "'";
        const std::string cname = need_string(z, "category", where);
        ws.zalgebras.emplace(name, ZAlgebraEntry{cname, WindowedZAlgebra(need_long(z, "lo", where),
                                                                          need_long(z, "hi", where),
                                                                          ws.category(cname))});
    }

    for (const auto& [name, s] : section(j, "site_morphisms").items()) {
        const std::string where = "site morphism '" + name + "'";
        SiteMorphismEntry e{need_string(s, "functor", where), need_string(s, "source", where),
                            need_string(s, "target", where)};
        ws.site_morphisms.emplace(name, e);
        ws.site_morphism(name);  // resolve now
    }

    for (const auto& [name, c] : ws.categories) check_field(ws, c, "category '" + name + "'");
    return ws;
}

Workspace load_workspace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::exception& e) {
        throw InputError("'" + path + "': " + e.what());
    }
    try {
        return workspace_from_json(j);
    } catch (const Json::exception& e) {
        throw InputError("'" + path + "': " + e.what());
    }
}

void save_workspace(const Workspace& ws, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << workspace_to_json(ws).dump(2) << "\n";
}

std::uint64_t content_hash(const Json& j) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : j.dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace lsite
