#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "lsite/functoriality.hpp"
#include "lsite/zalg.hpp"

namespace lsite {

using Json = nlohmann::json;

inline constexpr const char* kWorkspaceVersion = "1";

// Entities refer to each other by name only.
struct FunctorEntry {
    std::string source, target;  // category names
    LinearFunctor functor;
};
struct ModuleEntry {
    std::string category;
    PresheafModule module;
};
struct SystemEntry {
    std::string category;
    CoverSystem system;
};
struct ZAlgebraEntry {
    std::string category;
    WindowedZAlgebra algebra;
};
struct SiteMorphismEntry {
    std::string functor, source, target;  // functor and cover system names
};

struct Workspace {
    std::string version = kWorkspaceVersion;
    Field field;
    std::map<std::string, CategoryPtr> categories;
    std::map<std::string, FunctorEntry> functors;
    std::map<std::string, ModuleEntry> modules;
    std::map<std::string, SystemEntry> cover_systems;
    std::map<std::string, GradedAlgebra> graded_algebras;
    std::map<std::string, ZAlgebraEntry> zalgebras;
    std::map<std::string, SiteMorphismEntry> site_morphisms;

    const CategoryPtr& category(const std::string& name) const;
    const FunctorEntry& functor(const std::string& name) const;
    const ModuleEntry& module(const std::string& name) const;
    const SystemEntry& cover_system(const std::string& name) const;
    const GradedAlgebra& graded_algebra(const std::string& name) const;
    const ZAlgebraEntry& zalgebra(const std::string& name) const;
    SiteMorphism site_morphism(const std::string& name) const;
    // Name under which c is stored (same pointer, else structurally equal); empty if none.
    std::string category_name(const CategoryPtr& c) const;
    // Stores c under name unless this very category is present; returns the name in use.
    std::string add_category(const std::string& name, const CategoryPtr& c);
};

// Row-major; integers for prime fields, "p/q" strings over Q.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const Field& f, std::size_t rows, std::size_t cols);
Json field_to_json(const Field& f);
Field field_from_json(const Json& j);
// "2", "7", "Q"
Field parse_field(const std::string& s);

Json category_to_json(const FiniteLinearCategory& c, const Workspace* ws = nullptr);
Json functor_to_json(const FunctorEntry& f);
Json module_to_json(const ModuleEntry& m);
Json sieve_to_json(const Sieve& s);
Sieve sieve_from_json(const Json& j, const CategoryPtr& c, std::size_t target);
Json system_to_json(const SystemEntry& s);
Json graded_to_json(const GradedAlgebra& g);
Json zalgebra_to_json(const ZAlgebraEntry& z);
Json finding_to_json(const Finding& f);
Json witness_to_json(const CategoryPtr& c, const Witness& w);

Json workspace_to_json(const Workspace& ws);
// Throws InputError on schema problems and the usual errors on inconsistent data.
Workspace workspace_from_json(const Json& j);
Workspace load_workspace(const std::string& path);
void save_workspace(const Workspace& ws, const std::string& path);

// FNV-1a over the canonical dump.
std::uint64_t content_hash(const Json& j);
std::string hash_hex(std::uint64_t h);

}  // namespace lsite
