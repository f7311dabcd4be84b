#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lsite/errors.hpp"
#include "lsite/report.hpp"
#include "lsite/subspace.hpp"

namespace lsite {

class FiniteLinearCategory;
using CategoryPtr = std::shared_ptr<const FiniteLinearCategory>;

// Raw data of a finite linear category. hom(src,dst) lives at index src*n+dst.
// composition[(x*n+y)*n+z] has one row per basis pair (i,j), i over hom(y,z)
// and j over hom(x,y), at index i*dim hom(x,y)+j, holding e_i o e_j in hom(x,z).
struct CategoryData {
    Field field;
    std::vector<std::string> objects;
    std::vector<std::size_t> hom_dims;
    std::vector<std::vector<std::string>> labels;
    std::vector<Matrix> identities;
    std::vector<Matrix> composition;
};

class FiniteLinearCategory {
public:
    struct Factors {
        CategoryPtr a, b;
    };

    explicit FiniteLinearCategory(CategoryData d, std::optional<Factors> factors = std::nullopt);

    const CategoryData& data() const { return d_; }
    const Field& field() const { return d_.field; }
    std::size_t size() const { return d_.objects.size(); }
    const std::string& name(std::size_t a) const { return d_.objects.at(a); }
    const std::vector<std::string>& objects() const { return d_.objects; }
    std::size_t index(const std::string& name) const;

    std::size_t hom_dim(std::size_t src, std::size_t dst) const { return d_.hom_dims[src * size() + dst]; }
    const std::vector<std::string>& labels(std::size_t src, std::size_t dst) const {
        return d_.labels[src * size() + dst];
    }
    std::string label(std::size_t src, std::size_t dst, std::size_t i) const;
    const Matrix& identity(std::size_t a) const { return d_.identities[a]; }
    const Matrix& table(std::size_t x, std::size_t y, std::size_t z) const {
        return d_.composition[(x * size() + y) * size() + z];
    }

    Matrix zero_vector(std::size_t src, std::size_t dst) const {
        return Matrix(field(), 1, hom_dim(src, dst));
    }
    Matrix basis_vector(std::size_t src, std::size_t dst, std::size_t i) const {
        return Matrix::unit_row(field(), hom_dim(src, dst), i);
    }
    Subspace full_hom(std::size_t src, std::size_t dst) const {
        return Subspace::full(field(), hom_dim(src, dst));
    }

    // f o g for f in hom(y,z), g in hom(x,y).
    Matrix compose(std::size_t x, std::size_t y, std::size_t z, const Matrix& f, const Matrix& g) const;
    // Matrix of g |-> f o g, hom(x,y) -> hom(x,z).
    Matrix post_compose(std::size_t x, std::size_t y, std::size_t z, const Matrix& f) const;
    // Matrix of f |-> f o g, hom(y,z) -> hom(x,z).
    Matrix pre_compose(std::size_t x, std::size_t y, std::size_t z, const Matrix& g) const;

    const std::optional<Factors>& factors() const { return factors_; }

private:
    CategoryData d_;
    std::optional<Factors> factors_;
};

CategoryPtr make_category(CategoryData d);

// Builds structure constants from a rule giving e_i o e_j (i over hom(y,z), j over hom(x,y))
// as a coordinate row in hom(x,z).
using ComposeRule = std::function<Matrix(std::size_t x, std::size_t y, std::size_t z, std::size_t i,
                                         std::size_t j)>;
CategoryPtr category_from_rule(const Field& f, std::vector<std::string> objects,
                               std::vector<std::size_t> hom_dims, std::vector<Matrix> identities,
                               const ComposeRule& rule, std::vector<std::vector<std::string>> labels = {});

ValidationReport validate_category(const FiniteLinearCategory& c);
// Same objects, dims, identities and structure constants.
bool structurally_equal(const FiniteLinearCategory& a, const FiniteLinearCategory& b);

CategoryPtr tensor_category(const CategoryPtr& a, const CategoryPtr& b);
std::string pair_name(const std::string& a, const std::string& b);
// Full subcategory on the listed objects (in the given order).
CategoryPtr full_subcategory(const CategoryPtr& c, const std::vector<std::size_t>& objects,
                             const std::vector<std::string>& names = {});

// ---------------------------------------------------------------------------

class LinearFunctor {
public:
    // hom_maps[a*ns+b] : hom_s(a,b) -> hom_t(phi a, phi b)
    LinearFunctor(CategoryPtr source, CategoryPtr target, std::vector<std::size_t> object_map,
                  std::vector<Matrix> hom_maps);

    const CategoryPtr& source() const { return source_; }
    const CategoryPtr& target() const { return target_; }
    std::size_t object(std::size_t a) const { return object_map_[a]; }
    const std::vector<std::size_t>& object_map() const { return object_map_; }
    const Matrix& hom_map(std::size_t a, std::size_t b) const {
        return hom_maps_[a * source_->size() + b];
    }
    const std::vector<Matrix>& hom_maps() const { return hom_maps_; }
    Matrix apply(std::size_t a, std::size_t b, const Matrix& v) const { return lsite::apply(hom_map(a, b), v); }

private:
    CategoryPtr source_, target_;
    std::vector<std::size_t> object_map_;
    std::vector<Matrix> hom_maps_;
};

ValidationReport validate_functor(const LinearFunctor& f);
LinearFunctor identity_functor(const CategoryPtr& c);
// g after f.
LinearFunctor compose_functors(const LinearFunctor& g, const LinearFunctor& f);
LinearFunctor tensor_functor(const LinearFunctor& phi, const LinearFunctor& psi);
LinearFunctor inclusion_functor(const CategoryPtr& sub, const CategoryPtr& c,
                                const std::vector<std::size_t>& objects);
// A |-> (A,B) on a -> a(x)b, and B |-> (A,B) on b -> a(x)b.
LinearFunctor slice_first(const CategoryPtr& ab, std::size_t b_object);
LinearFunctor slice_second(const CategoryPtr& ab, std::size_t a_object);
bool operator==(const LinearFunctor& x, const LinearFunctor& y);

// ---------------------------------------------------------------------------

// Contravariant module: a basis morphism e in hom(B,A) acts as F(e): F(A) -> F(B).
class PresheafModule {
public:
    // action[b*n+a][i] = F(e_i), e_i the i-th basis vector of hom(b,a): dims[b] x dims[a].
    PresheafModule(CategoryPtr c, std::vector<std::size_t> dims,
                   std::vector<std::vector<Matrix>> action);

    const CategoryPtr& category() const { return cat_; }
    const Field& field() const { return cat_->field(); }
    std::size_t dim(std::size_t a) const { return dims_[a]; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t total_dim() const;
    bool is_zero() const { return total_dim() == 0; }
    const Matrix& basis_action(std::size_t b, std::size_t a, std::size_t i) const {
        return action_[b * cat_->size() + a][i];
    }
    const std::vector<std::vector<Matrix>>& action() const { return action_; }
    // F(f) for an arbitrary f in hom(b,a).
    Matrix act(std::size_t b, std::size_t a, const Matrix& f) const;

    bool operator==(const PresheafModule& o) const;

private:
    CategoryPtr cat_;
    std::vector<std::size_t> dims_;
    std::vector<std::vector<Matrix>> action_;
};

ValidationReport validate_module(const PresheafModule& m);
PresheafModule zero_module(const CategoryPtr& c);
PresheafModule representable_module(const CategoryPtr& c, std::size_t a);
PresheafModule restrict_module(const LinearFunctor& phi, const PresheafModule& f);
PresheafModule external_tensor_module(const CategoryPtr& ab, const PresheafModule& m,
                                      const PresheafModule& n);
PresheafModule direct_sum(const PresheafModule& m, const PresheafModule& n);

struct NatTransform {
    PresheafModule source;
    PresheafModule target;
    std::vector<Matrix> components;  // target.dim(A) x source.dim(A)
};

ValidationReport validate_nat(const NatTransform& t);
NatTransform identity_nat(const PresheafModule& m);
bool is_isomorphism(const NatTransform& t);

// Natural transformations m -> n as a subspace of the flattened components.
struct HomSpace {
    Subspace solutions;
    std::vector<std::size_t> offsets;
    std::vector<std::size_t> rows, cols;

    std::size_t dim() const { return solutions.dim(); }
    std::vector<Matrix> components(const Matrix& v) const;
    Matrix flatten(const std::vector<Matrix>& comps) const;
};

HomSpace hom_modules(const PresheafModule& m, const PresheafModule& n);

// ---------------------------------------------------------------------------
// Submodules are per-object subspaces stable under the action.

using Submodule = std::vector<Subspace>;

Submodule zero_submodule(const PresheafModule& m);
Submodule full_submodule(const PresheafModule& m);
bool is_submodule(const PresheafModule& m, const Submodule& u);
// Smallest submodule containing u (one pass; asserted stable).
Submodule generate_submodule(const PresheafModule& m, const Submodule& u);
// (V/U) with basis the reduced residues of V modulo U; requires U inside V.
PresheafModule subquotient(const PresheafModule& m, const Submodule& v, const Submodule& u);
std::string submodule_key(const Submodule& u);
bool submodule_contains(const Submodule& big, const Submodule& small);

// All submodules, ordered by total dimension then canonical key.
std::vector<Submodule> enumerate_submodules(const PresheafModule& m, const Caps& caps = {});

// All modules with dim F(A) = dims[A], up to equality of action tables.
std::vector<PresheafModule> enumerate_modules(const CategoryPtr& c, const std::vector<std::size_t>& dims,
                                              const Caps& caps = {});
// All modules with every dim F(A) <= bound.
std::vector<PresheafModule> enumerate_modules_bounded(const CategoryPtr& c, std::size_t bound,
                                                      const Caps& caps = {});

}  // namespace lsite
