#include "lsite/category.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "ops.hpp"

namespace lsite {

using detail::Access;

namespace {

void check_shape(const Matrix& m, std::size_t r, std::size_t c, const std::string& what) {
    if (m.rows() != r || m.cols() != c)
        throw DimensionMismatch(what + ": expected " + std::to_string(r) + "x" + std::to_string(c) +
                                ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

Matrix column_as_row(const Matrix& m, std::size_t j) { return m.select_cols({j}).transpose(); }

}  // namespace

FiniteLinearCategory::FiniteLinearCategory(CategoryData d, std::optional<Factors> factors)
    : d_(std::move(d)), factors_(std::move(factors)) {
    const std::size_t n = d_.objects.size();
    if (d_.hom_dims.size() != n * n) throw DimensionMismatch("category: hom_dims size");
    if (d_.labels.empty()) d_.labels.assign(n * n, {});
    if (d_.labels.size() != n * n) throw DimensionMismatch("category: labels size");
    if (d_.identities.size() != n) throw DimensionMismatch("category: identities size");
    if (d_.composition.size() != n * n * n) throw DimensionMismatch("category: composition size");
    for (std::size_t a = 0; a < n; ++a)
        check_shape(d_.identities[a], 1, hom_dim(a, a), "identity of " + d_.objects[a]);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                check_shape(table(x, y, z), hom_dim(y, z) * hom_dim(x, y), hom_dim(x, z),
                            "composition table (" + d_.objects[x] + "," + d_.objects[y] + "," +
                                d_.objects[z] + ")");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (d_.objects[i] == d_.objects[j])
                throw InputError("category: duplicate object '" + d_.objects[i] + "'");
}

CategoryPtr make_category(CategoryData d) {
    return std::make_shared<const FiniteLinearCategory>(std::move(d));
}

CategoryPtr category_from_rule(const Field& f, std::vector<std::string> objects,
                               std::vector<std::size_t> hom_dims, std::vector<Matrix> identities,
                               const ComposeRule& rule, std::vector<std::vector<std::string>> labels) {
    const std::size_t n = objects.size();
    CategoryData d;
    d.field = f;
    d.objects = std::move(objects);
    d.hom_dims = std::move(hom_dims);
    d.labels = std::move(labels);
    d.identities = std::move(identities);
    d.composition.resize(n * n * n);
    auto dim = [&](std::size_t a, std::size_t b) { return d.hom_dims.at(a * n + b); };
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                std::vector<Matrix> rows;
                for (std::size_t i = 0; i < dim(y, z); ++i)
                    for (std::size_t j = 0; j < dim(x, y); ++j) rows.push_back(rule(x, y, z, i, j));
                d.composition[(x * n + y) * n + z] = Matrix::stack(f, dim(x, z), rows);
            }
    return make_category(std::move(d));
}

std::size_t FiniteLinearCategory::index(const std::string& name) const {
    for (std::size_t i = 0; i < size(); ++i)
        if (d_.objects[i] == name) return i;
    throw UnknownObject("unknown object '" + name + "'");
}

std::string FiniteLinearCategory::label(std::size_t src, std::size_t dst, std::size_t i) const {
    const auto& l = labels(src, dst);
    if (i < l.size() && !l[i].empty()) return l[i];
    return "e" + std::to_string(i) + ":" + name(src) + "->" + name(dst);
}

Matrix FiniteLinearCategory::compose(std::size_t x, std::size_t y, std::size_t z, const Matrix& f,
                                     const Matrix& g) const {
    const std::size_t dyz = hom_dim(y, z), dxy = hom_dim(x, y), dxz = hom_dim(x, z);
    if (f.rows() != 1 || f.cols() != dyz || g.rows() != 1 || g.cols() != dxy)
        throw DimensionMismatch("compose: vector lengths do not match hom dims");
    Matrix out(field(), 1, dxz);
    if (dxz == 0) return out;
    with_ops(field(), [&](auto ops) {
        auto& o = Access::data(out, ops);
        const auto& t = Access::data(table(x, y, z), ops);
        const auto& fv = Access::data(f, ops);
        const auto& gv = Access::data(g, ops);
        for (std::size_t i = 0; i < dyz; ++i) {
            if (ops.is_zero(fv[i])) continue;
            for (std::size_t j = 0; j < dxy; ++j) {
                if (ops.is_zero(gv[j])) continue;
                auto c = ops.mul(fv[i], gv[j]);
                const std::size_t base = (i * dxy + j) * dxz;
                for (std::size_t k = 0; k < dxz; ++k)
                    if (!ops.is_zero(t[base + k])) o[k] = ops.add(o[k], ops.mul(c, t[base + k]));
            }
        }
        return 0;
    });
    return out;
}

Matrix FiniteLinearCategory::post_compose(std::size_t x, std::size_t y, std::size_t z,
                                          const Matrix& f) const {
    const std::size_t dyz = hom_dim(y, z), dxy = hom_dim(x, y), dxz = hom_dim(x, z);
    if (f.rows() != 1 || f.cols() != dyz) throw DimensionMismatch("post_compose: vector length");
    Matrix out(field(), dxz, dxy);
    if (dxz == 0 || dxy == 0) return out;
    with_ops(field(), [&](auto ops) {
        auto& o = Access::data(out, ops);
        const auto& t = Access::data(table(x, y, z), ops);
        const auto& fv = Access::data(f, ops);
        for (std::size_t i = 0; i < dyz; ++i) {
            if (ops.is_zero(fv[i])) continue;
            for (std::size_t j = 0; j < dxy; ++j) {
                const std::size_t base = (i * dxy + j) * dxz;
                for (std::size_t k = 0; k < dxz; ++k)
                    if (!ops.is_zero(t[base + k]))
                        o[k * dxy + j] = ops.add(o[k * dxy + j], ops.mul(fv[i], t[base + k]));
            }
        }
        return 0;
    });
    return out;
}

Matrix FiniteLinearCategory::pre_compose(std::size_t x, std::size_t y, std::size_t z,
                                         const Matrix& g) const {
    const std::size_t dyz = hom_dim(y, z), dxy = hom_dim(x, y), dxz = hom_dim(x, z);
    if (g.rows() != 1 || g.cols() != dxy) throw DimensionMismatch("pre_compose: vector length");
    Matrix out(field(), dxz, dyz);
    if (dxz == 0 || dyz == 0) return out;
    with_ops(field(), [&](auto ops) {
        auto& o = Access::data(out, ops);
        const auto& t = Access::data(table(x, y, z), ops);
        const auto& gv = Access::data(g, ops);
        for (std::size_t j = 0; j < dxy; ++j) {
            if (ops.is_zero(gv[j])) continue;
            for (std::size_t i = 0; i < dyz; ++i) {
                const std::size_t base = (i * dxy + j) * dxz;
                for (std::size_t k = 0; k < dxz; ++k)
                    if (!ops.is_zero(t[base + k]))
                        o[k * dyz + i] = ops.add(o[k * dyz + i], ops.mul(gv[j], t[base + k]));
            }
        }
        return 0;
    });
    return out;
}

ValidationReport validate_category(const FiniteLinearCategory& c) {
    ValidationReport rep;
    const std::size_t n = c.size();
    if (n == 0) {
        rep.fail({"empty", {}, {}, "category has no objects"});
        return rep;
    }
    for (std::size_t a = 0; a < n; ++a)
        if (c.hom_dim(a, a) == 0)
            rep.fail({"zero-endomorphisms", {c.name(a)}, {}, "hom(A,A) = 0, no identity"});
    if (!rep.valid) return rep;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t j = 0; j < c.hom_dim(x, y); ++j) {
                Matrix e = c.basis_vector(x, y, j);
                if (c.compose(x, y, y, c.identity(y), e) != e)
                    rep.fail({"unit", {c.name(x), c.name(y)}, {{"morphism", e}},
                              "(id" + c.name(y) + ", " + c.label(x, y, j) + ")"});
                if (c.compose(x, x, y, e, c.identity(x)) != e)
                    rep.fail({"unit", {c.name(x), c.name(y)}, {{"morphism", e}},
                              "(" + c.label(x, y, j) + ", id" + c.name(x) + ")"});
            }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (c.hom_dim(x, y) == 0) continue;
            for (std::size_t z = 0; z < n; ++z) {
                if (c.hom_dim(y, z) == 0) continue;
                for (std::size_t w = 0; w < n; ++w) {
                    if (c.hom_dim(z, w) == 0) continue;
                    for (std::size_t k = 0; k < c.hom_dim(z, w); ++k) {
                        Matrix h = c.basis_vector(z, w, k);
                        for (std::size_t i = 0; i < c.hom_dim(y, z); ++i) {
                            Matrix f = c.basis_vector(y, z, i);
                            Matrix hf = c.compose(y, z, w, h, f);
                            for (std::size_t j = 0; j < c.hom_dim(x, y); ++j) {
                                Matrix g = c.basis_vector(x, y, j);
                                Matrix lhs = c.compose(x, y, w, hf, g);
                                Matrix rhs = c.compose(x, z, w, h, c.compose(x, y, z, f, g));
                                if (lhs != rhs)
                                    rep.fail({"associativity",
                                              {c.name(x), c.name(y), c.name(z), c.name(w)},
                                              {{"h", h}, {"f", f}, {"g", g}},
                                              "(" + c.label(z, w, k) + ", " + c.label(y, z, i) + ", " +
                                                  c.label(x, y, j) + ")"});
                            }
                        }
                    }
                }
            }
        }
    return rep;
}

bool structurally_equal(const FiniteLinearCategory& a, const FiniteLinearCategory& b) {
    const auto& x = a.data();
    const auto& y = b.data();
    return x.field == y.field && x.objects == y.objects && x.hom_dims == y.hom_dims &&
           x.identities == y.identities && x.composition == y.composition;
}

std::string pair_name(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

CategoryPtr tensor_category(const CategoryPtr& a, const CategoryPtr& b) {
    if (!(a->field() == b->field())) throw FieldMismatch("tensor_category: field mismatch");
    const std::size_t na = a->size(), nb = b->size(), n = na * nb;
    CategoryData d;
    d.field = a->field();
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) d.objects.push_back(pair_name(a->name(i), b->name(j)));
    d.hom_dims.resize(n * n);
    d.labels.resize(n * n);
    auto idx = [nb](std::size_t i, std::size_t j) { return i * nb + j; };
    for (std::size_t s1 = 0; s1 < na; ++s1)
        for (std::size_t s2 = 0; s2 < nb; ++s2)
            for (std::size_t t1 = 0; t1 < na; ++t1)
                for (std::size_t t2 = 0; t2 < nb; ++t2) {
                    std::size_t k = idx(s1, s2) * n + idx(t1, t2);
                    d.hom_dims[k] = a->hom_dim(s1, t1) * b->hom_dim(s2, t2);
                    for (std::size_t i = 0; i < a->hom_dim(s1, t1); ++i)
                        for (std::size_t j = 0; j < b->hom_dim(s2, t2); ++j)
                            d.labels[k].push_back(a->label(s1, t1, i) + "⊗" + b->label(s2, t2, j));
                }
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) d.identities.push_back(a->identity(i).kron(b->identity(j)));
    d.composition.resize(n * n * n);
    for (std::size_t x1 = 0; x1 < na; ++x1)
        for (std::size_t x2 = 0; x2 < nb; ++x2)
            for (std::size_t y1 = 0; y1 < na; ++y1)
                for (std::size_t y2 = 0; y2 < nb; ++y2)
                    for (std::size_t z1 = 0; z1 < na; ++z1)
                        for (std::size_t z2 = 0; z2 < nb; ++z2) {
                            const std::size_t x = idx(x1, x2), y = idx(y1, y2), z = idx(z1, z2);
                            const std::size_t ayz = a->hom_dim(y1, z1), axy = a->hom_dim(x1, y1);
                            const std::size_t byz = b->hom_dim(y2, z2), bxy = b->hom_dim(x2, y2);
                            const std::size_t dxz = a->hom_dim(x1, z1) * b->hom_dim(x2, z2);
                            Matrix& out = d.composition[(x * n + y) * n + z];
                            const std::size_t rows = ayz * byz * axy * bxy;
                            if (rows == 0 || dxz == 0) {
                                out = Matrix(d.field, rows, dxz);
                                continue;
                            }
                            Matrix k = a->table(x1, y1, z1).kron(b->table(x2, y2, z2));
                            // k row (i1*axy+j1)*(byz*bxy) + (i2*bxy+j2); want (i1*byz+i2)*(axy*bxy) + (j1*bxy+j2)
                            std::vector<std::size_t> perm(rows);
                            for (std::size_t i1 = 0; i1 < ayz; ++i1)
                                for (std::size_t i2 = 0; i2 < byz; ++i2)
                                    for (std::size_t j1 = 0; j1 < axy; ++j1)
                                        for (std::size_t j2 = 0; j2 < bxy; ++j2)
                                            perm[(i1 * byz + i2) * (axy * bxy) + j1 * bxy + j2] =
                                                (i1 * axy + j1) * (byz * bxy) + i2 * bxy + j2;
                            out = k.select_rows(perm);
                        }
    return std::make_shared<const FiniteLinearCategory>(std::move(d),
                                                        FiniteLinearCategory::Factors{a, b});
}

CategoryPtr full_subcategory(const CategoryPtr& c, const std::vector<std::size_t>& objects,
                             const std::vector<std::string>& names) {
    const std::size_t n = objects.size(), N = c->size();
    CategoryData d;
    d.field = c->field();
    for (std::size_t i = 0; i < n; ++i) d.objects.push_back(names.empty() ? c->name(objects[i]) : names.at(i));
    d.hom_dims.resize(n * n);
    d.labels.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            d.hom_dims[i * n + j] = c->hom_dim(objects[i], objects[j]);
            d.labels[i * n + j] = c->data().labels[objects[i] * N + objects[j]];
        }
    for (std::size_t i = 0; i < n; ++i) d.identities.push_back(c->identity(objects[i]));
    d.composition.resize(n * n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                d.composition[(x * n + y) * n + z] = c->table(objects[x], objects[y], objects[z]);
    return make_category(std::move(d));
}

// ---------------------------------------------------------------------------

LinearFunctor::LinearFunctor(CategoryPtr source, CategoryPtr target, std::vector<std::size_t> object_map,
                             std::vector<Matrix> hom_maps)
    : source_(std::move(source)), target_(std::move(target)), object_map_(std::move(object_map)),
      hom_maps_(std::move(hom_maps)) {
    if (!(source_->field() == target_->field())) throw FieldMismatch("functor: field mismatch");
    const std::size_t n = source_->size();
    if (object_map_.size() != n) throw DimensionMismatch("functor: object map size");
    for (auto t : object_map_)
        if (t >= target_->size()) throw UnknownObject("functor: object map out of range");
    if (hom_maps_.size() != n * n) throw DimensionMismatch("functor: hom map count");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            check_shape(hom_map(a, b), target_->hom_dim(object(a), object(b)), source_->hom_dim(a, b),
                        "functor hom map (" + source_->name(a) + "," + source_->name(b) + ")");
}

ValidationReport validate_functor(const LinearFunctor& f) {
    ValidationReport rep;
    const auto& s = *f.source();
    const auto& t = *f.target();
    for (std::size_t a = 0; a < s.size(); ++a)
        if (f.apply(a, a, s.identity(a)) != t.identity(f.object(a)))
            rep.fail({"identity", {s.name(a)}, {}, "identity not preserved"});
    for (std::size_t x = 0; x < s.size(); ++x)
        for (std::size_t y = 0; y < s.size(); ++y)
            for (std::size_t z = 0; z < s.size(); ++z)
                for (std::size_t i = 0; i < s.hom_dim(y, z); ++i)
                    for (std::size_t j = 0; j < s.hom_dim(x, y); ++j) {
                        Matrix fi = s.basis_vector(y, z, i), gj = s.basis_vector(x, y, j);
                        Matrix lhs = f.apply(x, z, s.compose(x, y, z, fi, gj));
                        Matrix rhs = t.compose(f.object(x), f.object(y), f.object(z), f.apply(y, z, fi),
                                               f.apply(x, y, gj));
                        if (lhs != rhs)
                            rep.fail({"composition", {s.name(x), s.name(y), s.name(z)},
                                      {{"f", fi}, {"g", gj}},
                                      "(" + s.label(y, z, i) + ", " + s.label(x, y, j) + ")"});
                    }
    return rep;
}

LinearFunctor identity_functor(const CategoryPtr& c) {
    std::vector<std::size_t> om(c->size());
    std::vector<Matrix> hm;
    for (std::size_t a = 0; a < c->size(); ++a) om[a] = a;
    for (std::size_t a = 0; a < c->size(); ++a)
        for (std::size_t b = 0; b < c->size(); ++b) hm.push_back(Matrix::identity(c->field(), c->hom_dim(a, b)));
    return LinearFunctor(c, c, om, hm);
}

LinearFunctor compose_functors(const LinearFunctor& g, const LinearFunctor& f) {
    if (!structurally_equal(*f.target(), *g.source()))
        throw PreconditionError("compose_functors: target of first is not source of second");
    const std::size_t n = f.source()->size();
    std::vector<std::size_t> om(n);
    std::vector<Matrix> hm;
    for (std::size_t a = 0; a < n; ++a) om[a] = g.object(f.object(a));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) hm.push_back(g.hom_map(f.object(a), f.object(b)) * f.hom_map(a, b));
    return LinearFunctor(f.source(), g.target(), om, hm);
}

LinearFunctor tensor_functor(const LinearFunctor& phi, const LinearFunctor& psi) {
    if (!(phi.source()->field() == psi.source()->field()))
        throw FieldMismatch("tensor_functor: field mismatch");
    CategoryPtr src = tensor_category(phi.source(), psi.source());
    CategoryPtr tgt = tensor_category(phi.target(), psi.target());
    const std::size_t na = phi.source()->size(), nb = psi.source()->size();
    const std::size_t tb = psi.target()->size();
    std::vector<std::size_t> om(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) om[i * nb + j] = phi.object(i) * tb + psi.object(j);
    std::vector<Matrix> hm;
    hm.reserve(na * nb * na * nb);
    for (std::size_t s1 = 0; s1 < na; ++s1)
        for (std::size_t s2 = 0; s2 < nb; ++s2)
            for (std::size_t t1 = 0; t1 < na; ++t1)
                for (std::size_t t2 = 0; t2 < nb; ++t2)
                    hm.push_back(phi.hom_map(s1, t1).kron(psi.hom_map(s2, t2)));
    return LinearFunctor(src, tgt, om, hm);
}

LinearFunctor inclusion_functor(const CategoryPtr& sub, const CategoryPtr& c,
                                const std::vector<std::size_t>& objects) {
    std::vector<Matrix> hm;
    for (std::size_t a = 0; a < sub->size(); ++a)
        for (std::size_t b = 0; b < sub->size(); ++b)
            hm.push_back(Matrix::identity(c->field(), sub->hom_dim(a, b)));
    return LinearFunctor(sub, c, objects, hm);
}

LinearFunctor slice_first(const CategoryPtr& ab, std::size_t b_object) {
    if (!ab->factors()) throw PreconditionError("slice_first: not a tensor category");
    const auto& a = ab->factors()->a;
    const auto& b = ab->factors()->b;
    const std::size_t na = a->size(), nb = b->size();
    std::vector<std::size_t> om(na);
    std::vector<Matrix> hm;
    for (std::size_t i = 0; i < na; ++i) om[i] = i * nb + b_object;
    Matrix idb = b->identity(b_object).transpose();
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            hm.push_back(Matrix::identity(a->field(), a->hom_dim(i, j)).kron(idb));
    return LinearFunctor(a, ab, om, hm);
}

LinearFunctor slice_second(const CategoryPtr& ab, std::size_t a_object) {
    if (!ab->factors()) throw PreconditionError("slice_second: not a tensor category");
    const auto& a = ab->factors()->a;
    const auto& b = ab->factors()->b;
    const std::size_t nb = b->size();
    std::vector<std::size_t> om(nb);
    std::vector<Matrix> hm;
    for (std::size_t j = 0; j < nb; ++j) om[j] = a_object * nb + j;
    Matrix ida = a->identity(a_object).transpose();
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            hm.push_back(ida.kron(Matrix::identity(b->field(), b->hom_dim(i, j))));
    return LinearFunctor(b, ab, om, hm);
}

bool operator==(const LinearFunctor& x, const LinearFunctor& y) {
    return structurally_equal(*x.source(), *y.source()) && structurally_equal(*x.target(), *y.target()) &&
           x.object_map() == y.object_map() && x.hom_maps() == y.hom_maps();
}

// ---------------------------------------------------------------------------

PresheafModule::PresheafModule(CategoryPtr c, std::vector<std::size_t> dims,
                               std::vector<std::vector<Matrix>> action)
    : cat_(std::move(c)), dims_(std::move(dims)), action_(std::move(action)) {
    const std::size_t n = cat_->size();
    if (dims_.size() != n) throw DimensionMismatch("module: dims size");
    if (action_.size() != n * n) throw DimensionMismatch("module: action size");
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t a = 0; a < n; ++a) {
            const auto& acts = action_[b * n + a];
            if (acts.size() != cat_->hom_dim(b, a))
                throw DimensionMismatch("module: action count at (" + cat_->name(b) + "," + cat_->name(a) + ")");
            for (const auto& m : acts)
                check_shape(m, dims_[b], dims_[a], "module action (" + cat_->name(b) + "," + cat_->name(a) + ")");
        }
}

std::size_t PresheafModule::total_dim() const {
    std::size_t t = 0;
    for (auto d : dims_) t += d;
    return t;
}

Matrix PresheafModule::act(std::size_t b, std::size_t a, const Matrix& f) const {
    return lincomb(f, action_[b * cat_->size() + a], dims_[b], dims_[a]);
}

bool PresheafModule::operator==(const PresheafModule& o) const {
    return structurally_equal(*cat_, *o.cat_) && dims_ == o.dims_ && action_ == o.action_;
}

ValidationReport validate_module(const PresheafModule& m) {
    ValidationReport rep;
    const auto& c = *m.category();
    const std::size_t n = c.size();
    for (std::size_t a = 0; a < n; ++a)
        if (m.act(a, a, c.identity(a)) != Matrix::identity(c.field(), m.dim(a)))
            rep.fail({"unit", {c.name(a)}, {}, "identity does not act as identity"});
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t cc = 0; cc < n; ++cc)
                for (std::size_t i = 0; i < c.hom_dim(b, a); ++i)
                    for (std::size_t j = 0; j < c.hom_dim(cc, b); ++j) {
                        Matrix e = c.basis_vector(b, a, i), g = c.basis_vector(cc, b, j);
                        Matrix lhs = m.act(cc, a, c.compose(cc, b, a, e, g));
                        Matrix rhs = m.basis_action(cc, b, j) * m.basis_action(b, a, i);
                        if (lhs != rhs)
                            rep.fail({"composition", {c.name(cc), c.name(b), c.name(a)}, {{"e", e}, {"g", g}},
                                      "F(e o g) != F(g) F(e) for (" + c.label(b, a, i) + ", " +
                                          c.label(cc, b, j) + ")"});
                    }
    return rep;
}

PresheafModule zero_module(const CategoryPtr& c) {
    const std::size_t n = c->size();
    std::vector<std::vector<Matrix>> act(n * n);
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t a = 0; a < n; ++a) act[b * n + a].assign(c->hom_dim(b, a), Matrix(c->field(), 0, 0));
    return PresheafModule(c, std::vector<std::size_t>(n, 0), act);
}

PresheafModule representable_module(const CategoryPtr& c, std::size_t a) {
    const std::size_t n = c->size();
    std::vector<std::size_t> dims(n);
    for (std::size_t b = 0; b < n; ++b) dims[b] = c->hom_dim(b, a);
    std::vector<std::vector<Matrix>> act(n * n);
    for (std::size_t cc = 0; cc < n; ++cc)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t j = 0; j < c->hom_dim(cc, b); ++j)
                act[cc * n + b].push_back(c->pre_compose(cc, b, a, c->basis_vector(cc, b, j)));
    return PresheafModule(c, dims, act);
}

PresheafModule restrict_module(const LinearFunctor& phi, const PresheafModule& f) {
    if (!structurally_equal(*phi.target(), *f.category()))
        throw PreconditionError("restrict_module: module does not live on the functor target");
    const auto& s = *phi.source();
    const std::size_t n = s.size();
    std::vector<std::size_t> dims(n);
    for (std::size_t a = 0; a < n; ++a) dims[a] = f.dim(phi.object(a));
    std::vector<std::vector<Matrix>> act(n * n);
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t i = 0; i < s.hom_dim(b, a); ++i)
                act[b * n + a].push_back(
                    f.act(phi.object(b), phi.object(a), column_as_row(phi.hom_map(b, a), i)));
    return PresheafModule(phi.source(), dims, act);
}

PresheafModule external_tensor_module(const CategoryPtr& ab, const PresheafModule& m, const PresheafModule& n) {
    if (!(m.field() == n.field())) throw FieldMismatch("external_tensor_module: field mismatch");
    if (!ab->factors()) throw PreconditionError("external_tensor_module: not a tensor category");
    const auto& a = *m.category();
    const auto& b = *n.category();
    if (!structurally_equal(a, *ab->factors()->a) || !structurally_equal(b, *ab->factors()->b))
        throw PreconditionError("external_tensor_module: factor categories differ");
    const std::size_t na = a.size(), nb = b.size(), N = na * nb;
    std::vector<std::size_t> dims(N);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) dims[i * nb + j] = m.dim(i) * n.dim(j);
    std::vector<std::vector<Matrix>> act(N * N);
    for (std::size_t s1 = 0; s1 < na; ++s1)
        for (std::size_t s2 = 0; s2 < nb; ++s2)
            for (std::size_t t1 = 0; t1 < na; ++t1)
                for (std::size_t t2 = 0; t2 < nb; ++t2) {
                    auto& slot = act[(s1 * nb + s2) * N + t1 * nb + t2];
                    for (std::size_t i = 0; i < a.hom_dim(s1, t1); ++i)
                        for (std::size_t j = 0; j < b.hom_dim(s2, t2); ++j)
                            slot.push_back(m.basis_action(s1, t1, i).kron(n.basis_action(s2, t2, j)));
                }
    return PresheafModule(ab, dims, act);
}

PresheafModule direct_sum(const PresheafModule& m, const PresheafModule& n) {
    const auto& c = *m.category();
    const std::size_t N = c.size();
    std::vector<std::size_t> dims(N);
    for (std::size_t a = 0; a < N; ++a) dims[a] = m.dim(a) + n.dim(a);
    std::vector<std::vector<Matrix>> act(N * N);
    for (std::size_t b = 0; b < N; ++b)
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t i = 0; i < c.hom_dim(b, a); ++i) {
                Matrix out(c.field(), dims[b], dims[a]);
                const Matrix& x = m.basis_action(b, a, i);
                const Matrix& y = n.basis_action(b, a, i);
                for (std::size_t r = 0; r < x.rows(); ++r)
                    for (std::size_t s = 0; s < x.cols(); ++s)
                        if (!x.is_zero_at(r, s)) out.set(r, s, x.get(r, s));
                for (std::size_t r = 0; r < y.rows(); ++r)
                    for (std::size_t s = 0; s < y.cols(); ++s)
                        if (!y.is_zero_at(r, s)) out.set(x.rows() + r, x.cols() + s, y.get(r, s));
                act[b * N + a].push_back(std::move(out));
            }
    return PresheafModule(m.category(), dims, act);
}

// ---------------------------------------------------------------------------

ValidationReport validate_nat(const NatTransform& t) {
    ValidationReport rep;
    const auto& c = *t.source.category();
    const std::size_t n = c.size();
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t i = 0; i < c.hom_dim(b, a); ++i) {
                Matrix lhs = t.components[b] * t.source.basis_action(b, a, i);
                Matrix rhs = t.target.basis_action(b, a, i) * t.components[a];
                if (lhs != rhs)
                    rep.fail({"naturality", {c.name(b), c.name(a)}, {{"e", c.basis_vector(b, a, i)}},
                              c.label(b, a, i)});
            }
    return rep;
}

NatTransform identity_nat(const PresheafModule& m) {
    std::vector<Matrix> comps;
    for (std::size_t a = 0; a < m.category()->size(); ++a) comps.push_back(Matrix::identity(m.field(), m.dim(a)));
    return NatTransform{m, m, comps};
}

bool is_isomorphism(const NatTransform& t) {
    for (std::size_t a = 0; a < t.components.size(); ++a) {
        const Matrix& c = t.components[a];
        if (c.rows() != c.cols() || rank(c) != c.rows()) return false;
    }
    return true;
}

std::vector<Matrix> HomSpace::components(const Matrix& v) const {
    std::vector<Matrix> out;
    for (std::size_t a = 0; a < offsets.size(); ++a) {
        std::vector<std::size_t> idx(rows[a] * cols[a]);
        for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = offsets[a] + k;
        out.push_back(v.select_cols(idx).reshaped(rows[a], cols[a]));
    }
    return out;
}

Matrix HomSpace::flatten(const std::vector<Matrix>& comps) const {
    const Field& f = solutions.field();
    Matrix v(f, 1, solutions.ambient_dim());
    for (std::size_t a = 0; a < offsets.size(); ++a)
        for (std::size_t r = 0; r < rows[a]; ++r)
            for (std::size_t c = 0; c < cols[a]; ++c)
                if (!comps[a].is_zero_at(r, c)) v.set(0, offsets[a] + r * cols[a] + c, comps[a].get(r, c));
    return v;
}

HomSpace hom_modules(const PresheafModule& m, const PresheafModule& n) {
    const auto& c = *m.category();
    if (!structurally_equal(c, *n.category())) throw PreconditionError("hom_modules: categories differ");
    const std::size_t N = c.size();
    HomSpace hs;
    std::size_t total = 0;
    for (std::size_t a = 0; a < N; ++a) {
        hs.offsets.push_back(total);
        hs.rows.push_back(n.dim(a));
        hs.cols.push_back(m.dim(a));
        total += n.dim(a) * m.dim(a);
    }
    std::size_t eqs = 0;
    for (std::size_t b = 0; b < N; ++b)
        for (std::size_t a = 0; a < N; ++a) eqs += c.hom_dim(b, a) * n.dim(b) * m.dim(a);
    Matrix sys(c.field(), eqs, total);
    std::size_t row = 0;
    with_ops(c.field(), [&](auto ops) {
        auto& S = Access::data(sys, ops);
        for (std::size_t b = 0; b < N; ++b)
            for (std::size_t a = 0; a < N; ++a)
                for (std::size_t i = 0; i < c.hom_dim(b, a); ++i) {
                    // X_b M(e) - N(e) X_a = 0, entries (r, s) with r < n(b), s < m(a)
                    const auto& Me = Access::data(m.basis_action(b, a, i), ops);
                    const auto& Ne = Access::data(n.basis_action(b, a, i), ops);
                    const std::size_t mb = m.dim(b), ma = m.dim(a), nb = n.dim(b), na = n.dim(a);
                    for (std::size_t r = 0; r < nb; ++r)
                        for (std::size_t s = 0; s < ma; ++s, ++row) {
                            auto* eq = &S[row * total];
                            for (std::size_t k = 0; k < mb; ++k) {
                                auto coef = Me[k * ma + s];
                                if (ops.is_zero(coef)) continue;
                                auto& cell = eq[hs.offsets[b] + r * mb + k];
                                cell = ops.add(cell, coef);
                            }
                            for (std::size_t k = 0; k < na; ++k) {
                                auto coef = Ne[r * na + k];
                                if (ops.is_zero(coef)) continue;
                                auto& cell = eq[hs.offsets[a] + k * ma + s];
                                cell = ops.sub(cell, coef);
                            }
                        }
                }
        return 0;
    });
    hs.solutions = eqs == 0 ? Subspace::full(c.field(), total) : kernel(sys);
    return hs;
}

// ---------------------------------------------------------------------------

Submodule zero_submodule(const PresheafModule& m) {
    Submodule u;
    for (auto d : m.dims()) u.emplace_back(m.field(), d);
    return u;
}

Submodule full_submodule(const PresheafModule& m) {
    Submodule u;
    for (auto d : m.dims()) u.push_back(Subspace::full(m.field(), d));
    return u;
}

bool is_submodule(const PresheafModule& m, const Submodule& u) {
    const auto& c = *m.category();
    const std::size_t N = c.size();
    for (std::size_t b = 0; b < N; ++b)
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t i = 0; i < c.hom_dim(b, a); ++i)
                for (std::size_t k = 0; k < u[a].dim(); ++k)
                    if (!u[b].contains(apply(m.basis_action(b, a, i), u[a].basis_vector(k)))) return false;
    return true;
}

namespace {

Submodule one_pass(const PresheafModule& m, const Submodule& u) {
    const auto& c = *m.category();
    const std::size_t N = c.size();
    Submodule out;
    for (std::size_t b = 0; b < N; ++b) {
        std::vector<Matrix> vecs{u[b].basis()};
        for (std::size_t a = 0; a < N; ++a) {
            if (u[a].is_zero()) continue;
            for (std::size_t i = 0; i < c.hom_dim(b, a); ++i)
                vecs.push_back(u[a].basis() * m.basis_action(b, a, i).transpose());
        }
        out.push_back(Subspace::span(Matrix::stack(m.field(), m.dim(b), vecs)));
    }
    return out;
}

}  // namespace

Submodule generate_submodule(const PresheafModule& m, const Submodule& u) {
    Submodule once = one_pass(m, u);
    Submodule twice = one_pass(m, once);
    if (twice != once)
        throw Error("submodule generation did not stabilize after one pass: action tables are not compatible "
                    "with composition");
    return once;
}

PresheafModule subquotient(const PresheafModule& m, const Submodule& v, const Submodule& u) {
    const auto& c = *m.category();
    const std::size_t N = c.size();
    std::vector<Subspace> q;
    std::vector<std::size_t> dims;
    for (std::size_t a = 0; a < N; ++a) {
        if (!v[a].contains(u[a])) throw PreconditionError("subquotient: U is not contained in V");
        std::vector<Matrix> res;
        for (std::size_t k = 0; k < v[a].dim(); ++k) res.push_back(u[a].reduce(v[a].basis_vector(k)));
        q.push_back(Subspace::span(m.field(), m.dim(a), res));
        dims.push_back(q.back().dim());
    }
    std::vector<std::vector<Matrix>> act(N * N);
    for (std::size_t b = 0; b < N; ++b)
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t i = 0; i < c.hom_dim(b, a); ++i) {
                Matrix out(m.field(), dims[b], dims[a]);
                for (std::size_t j = 0; j < dims[a]; ++j) {
                    Matrix img = u[b].reduce(apply(m.basis_action(b, a, i), q[a].basis_vector(j)));
                    Matrix coords = q[b].coordinates(img);
                    for (std::size_t r = 0; r < dims[b]; ++r)
                        if (!coords.is_zero_at(0, r)) out.set(r, j, coords.get(0, r));
                }
                act[b * N + a].push_back(std::move(out));
            }
    return PresheafModule(m.category(), dims, act);
}

std::string submodule_key(const Submodule& u) {
    std::string k;
    for (const auto& s : u) {
        k += s.key();
        k.push_back('|');
    }
    return k;
}

bool submodule_contains(const Submodule& big, const Submodule& small) {
    for (std::size_t a = 0; a < big.size(); ++a)
        if (!big[a].contains(small[a])) return false;
    return true;
}

namespace {

std::size_t total_dim(const Submodule& u) {
    std::size_t t = 0;
    for (const auto& s : u) t += s.dim();
    return t;
}

// Normalized representatives of the nonzero classes of F^n / s, first nonzero coefficient 1.
std::vector<Matrix> projective_complement(const Subspace& s, std::uint64_t cap) {
    const Field& f = s.field();
    const std::size_t n = s.ambient_dim();
    std::vector<bool> piv(n, false);
    for (auto p : s.pivots()) piv[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < n; ++j)
        if (!piv[j]) free.push_back(j);
    const std::size_t d = free.size();
    checked_power(f, d, cap, "submodule candidates");
    const std::uint32_t p = f.characteristic();
    std::vector<Matrix> out;
    // leading position l gets coefficient 1, later free positions arbitrary
    for (std::size_t l = 0; l < d; ++l) {
        const std::size_t rest = d - l - 1;
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < rest; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Matrix v(f, 1, n);
            v.set_int(0, free[l], 1);
            std::uint64_t x = idx;
            for (std::size_t i = rest; i-- > 0;) {
                v.set_int(0, free[l + 1 + i], static_cast<std::int64_t>(x % p));
                x /= p;
            }
            out.push_back(std::move(v));
        }
    }
    return out;
}

}  // namespace

std::vector<Submodule> enumerate_submodules(const PresheafModule& m, const Caps& caps) {
    if (!m.field().is_prime()) throw UnsupportedField("enumerate_submodules: needs a prime field");
    const std::size_t N = m.category()->size();
    const Submodule z = zero_submodule(m);
    // every submodule is a sum of cyclic ones, so close the cyclics under sums
    std::vector<Submodule> cyclic;
    std::set<std::string> cyclic_keys;
    for (std::size_t a = 0; a < N; ++a)
        for (const auto& x : projective_complement(z[a], caps.enum_vectors)) {
            Submodule g = z;
            g[a] = Subspace::span(x);
            g = generate_submodule(m, g);
            if (cyclic_keys.insert(submodule_key(g)).second) cyclic.push_back(std::move(g));
        }
    std::map<std::string, Submodule> seen;
    std::deque<Submodule> queue;
    seen.emplace(submodule_key(z), z);
    queue.push_back(z);
    while (!queue.empty()) {
        Submodule u = std::move(queue.front());
        queue.pop_front();
        for (const auto& c : cyclic) {
            if (submodule_contains(u, c)) continue;
            Submodule g = u;
            for (std::size_t a = 0; a < N; ++a)
                if (!g[a].contains(c[a])) g[a] = sum(g[a], c[a]);
            std::string k = submodule_key(g);
            if (seen.count(k)) continue;
            if (seen.size() >= caps.subspaces)
                throw CapExceeded("cap-subspace", caps.subspaces, "more than " + std::to_string(caps.subspaces) + " submodules");
            seen.emplace(std::move(k), g);
            queue.push_back(std::move(g));
        }
    }
    std::vector<Submodule> out;
    for (auto& [k, u] : seen) out.push_back(u);
    std::stable_sort(out.begin(), out.end(),
                     [](const Submodule& x, const Submodule& y) { return total_dim(x) < total_dim(y); });
    return out;
}

std::vector<PresheafModule> enumerate_modules(const CategoryPtr& c, const std::vector<std::size_t>& dims,
                                              const Caps& caps) {
    const Field& f = c->field();
    if (!f.is_prime()) throw UnsupportedField("enumerate_modules: needs a prime field");
    const std::size_t N = c->size();
    struct Slot {
        std::size_t b, a, i;
    };
    std::vector<Slot> free;
    std::vector<std::vector<Matrix>> act(N * N);
    std::size_t bits = 0;
    for (std::size_t b = 0; b < N; ++b)
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t i = 0; i < c->hom_dim(b, a); ++i) {
                Matrix e = c->basis_vector(b, a, i);
                if (a == b && e == c->identity(a)) {
                    act[b * N + a].push_back(Matrix::identity(f, dims[a]));
                } else {
                    act[b * N + a].push_back(Matrix(f, dims[b], dims[a]));
                    if (dims[b] * dims[a] > 0) {
                        free.push_back({b, a, i});
                        bits += dims[b] * dims[a];
                    }
                }
            }
    std::uint64_t total = 0;
    try {
        total = checked_power(f, bits, caps.module_candidates, "module action tables");
    } catch (const CapExceeded& e) {
        throw CapExceeded("cap-module", caps.module_candidates, e.requested());
    }
    const std::uint32_t p = f.characteristic();
    std::vector<PresheafModule> out;
    std::vector<std::uint32_t> digits(bits, 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::size_t pos = 0;
        for (const auto& s : free) {
            Matrix& mtx = act[s.b * N + s.a][s.i];
            for (std::size_t r = 0; r < dims[s.b]; ++r)
                for (std::size_t q = 0; q < dims[s.a]; ++q) mtx.set_int(r, q, digits[pos++]);
        }
        PresheafModule m(c, dims, act);
        if (validate_module(m).valid) out.push_back(std::move(m));
        for (std::size_t i = bits; i-- > 0;) {
            if (++digits[i] < p) break;
            digits[i] = 0;
        }
    }
    return out;
}

std::vector<PresheafModule> enumerate_modules_bounded(const CategoryPtr& c, std::size_t bound, const Caps& caps) {
    const std::size_t N = c->size();
    std::vector<std::size_t> dims(N, 0);
    std::vector<PresheafModule> out;
    while (true) {
        auto part = enumerate_modules(c, dims, caps);
        for (auto& m : part) out.push_back(std::move(m));
        std::size_t i = N;
        while (i-- > 0) {
            if (++dims[i] <= bound) break;
            dims[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

}  // namespace lsite
