#include "lsite/sheaf.hpp"

namespace lsite {

PresheafModule sieve_module(const Sieve& s) {
    auto rep = representable_module(s.category(), s.target());
    return subquotient(rep, s.components(), zero_submodule(rep));
}

namespace {

void same_site(const PresheafModule& f, const CoveringOracle& o) {
    if (!structurally_equal(*f.category(), *o.category()))
        throw PreconditionError("module and cover system live on different categories");
}

// Components of x |-> (r |-> F(r)x) at every object, for x in F(A) and R on A.
std::vector<Matrix> restriction_components(const PresheafModule& f, const Sieve& r, const Matrix& x) {
    const auto& c = *f.category();
    const std::size_t a = r.target();
    std::vector<Matrix> comps;
    for (std::size_t cc = 0; cc < c.size(); ++cc) {
        const Subspace& rc = r.component(cc);
        Matrix m(f.field(), f.dim(cc), rc.dim());
        for (std::size_t j = 0; j < rc.dim(); ++j) {
            Matrix y = apply(f.act(cc, a, rc.basis_vector(j)), x);
            for (std::size_t t = 0; t < f.dim(cc); ++t)
                if (!y.is_zero_at(0, t)) m.set(t, j, y.get(0, t));
        }
        comps.push_back(std::move(m));
    }
    return comps;
}

// Matrix of F(A) -> hom(R, F) in the basis of hs.
Matrix restriction_matrix(const PresheafModule& f, const Sieve& r, const HomSpace& hs) {
    const std::size_t a = r.target();
    Matrix out(f.field(), hs.dim(), f.dim(a));
    for (std::size_t t = 0; t < f.dim(a); ++t) {
        Matrix coords = hs.solutions.coordinates(hs.flatten(restriction_components(f, r, Matrix::unit_row(f.field(), f.dim(a), t))));
        for (std::size_t k = 0; k < hs.dim(); ++k)
            if (!coords.is_zero_at(0, k)) out.set(k, t, coords.get(0, k));
    }
    return out;
}

}  // namespace

bool sheaf_condition_at(const PresheafModule& f, const Sieve& r) {
    auto hs = hom_modules(sieve_module(r), f);
    const std::size_t d = f.dim(r.target());
    if (hs.dim() != d) return false;
    return rank(restriction_matrix(f, r, hs)) == d;
}

bool is_sheaf(const PresheafModule& f, const CoveringOracle& o) {
    same_site(f, o);
    for (std::size_t a = 0; a < f.category()->size(); ++a)
        if (!sheaf_condition_at(f, o.minimal_cover(a))) return false;
    return true;
}

bool is_sheaf(const PresheafModule& f, const CoverSystem& t, const Caps& caps) {
    return is_sheaf(f, CoveringOracle(t, caps));
}

bool is_null_presheaf(const PresheafModule& f, const CoveringOracle& o) {
    same_site(f, o);
    const auto& c = *f.category();
    for (std::size_t a = 0; a < c.size(); ++a) {
        if (f.dim(a) == 0) continue;
        const Sieve& m = o.minimal_cover(a);
        for (std::size_t cc = 0; cc < c.size(); ++cc)
            for (std::size_t j = 0; j < m.component(cc).dim(); ++j)
                if (!f.act(cc, a, m.component(cc).basis_vector(j)).is_zero()) return false;
    }
    return true;
}

bool is_null_presheaf(const PresheafModule& f, const CoverSystem& t, const Caps& caps) {
    return is_null_presheaf(f, CoveringOracle(t, caps));
}

PlusResult plus_construction(const PresheafModule& f, const CoveringOracle& o) {
    same_site(f, o);
    const auto& cp = f.category();
    const auto& c = *cp;
    const std::size_t n = c.size();
    std::vector<HomSpace> homs;
    std::vector<std::size_t> dims;
    for (std::size_t a = 0; a < n; ++a) {
        homs.push_back(hom_modules(sieve_module(o.minimal_cover(a)), f));
        dims.push_back(homs.back().dim());
    }
    std::vector<std::vector<Matrix>> act(n * n);
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t i = 0; i < c.hom_dim(b, a); ++i) {
                // xi'_C = xi_C P_C, P_C the coordinates of e o s in M_A(C), s in M_B(C)
                Matrix e = c.basis_vector(b, a, i);
                const Sieve& ma = o.minimal_cover(a);
                const Sieve& mb = o.minimal_cover(b);
                std::vector<Matrix> p;
                for (std::size_t cc = 0; cc < n; ++cc) {
                    Matrix pc(c.field(), ma.component(cc).dim(), mb.component(cc).dim());
                    for (std::size_t j = 0; j < mb.component(cc).dim(); ++j) {
                        Matrix coords = ma.component(cc).coordinates(c.compose(cc, b, a, e, mb.component(cc).basis_vector(j)));
                        for (std::size_t r = 0; r < pc.rows(); ++r)
                            if (!coords.is_zero_at(0, r)) pc.set(r, j, coords.get(0, r));
                    }
                    p.push_back(std::move(pc));
                }
                Matrix m(c.field(), dims[b], dims[a]);
                for (std::size_t k = 0; k < dims[a]; ++k) {
                    auto xi = homs[a].components(homs[a].solutions.basis_vector(k));
                    for (std::size_t cc = 0; cc < n; ++cc) xi[cc] = xi[cc] * p[cc];
                    Matrix coords = homs[b].solutions.coordinates(homs[b].flatten(xi));
                    for (std::size_t r = 0; r < dims[b]; ++r)
                        if (!coords.is_zero_at(0, r)) m.set(r, k, coords.get(0, r));
                }
                act[b * n + a].push_back(std::move(m));
            }
    PresheafModule plus(cp, dims, act);
    std::vector<Matrix> unit;
    for (std::size_t a = 0; a < n; ++a) unit.push_back(restriction_matrix(f, o.minimal_cover(a), homs[a]));
    return PlusResult{plus, NatTransform{f, plus, unit}, homs};
}

NatTransform plus_map(const NatTransform& eta, const PlusResult& pf, const PlusResult& pg, const CoveringOracle&) {
    const std::size_t n = eta.components.size();
    std::vector<Matrix> comps;
    for (std::size_t a = 0; a < n; ++a) {
        const HomSpace& hf = pf.homs[a];
        const HomSpace& hg = pg.homs[a];
        Matrix m(eta.source.field(), hg.dim(), hf.dim());
        for (std::size_t k = 0; k < hf.dim(); ++k) {
            auto xi = hf.components(hf.solutions.basis_vector(k));
            for (std::size_t cc = 0; cc < n; ++cc) xi[cc] = eta.components[cc] * xi[cc];
            Matrix coords = hg.solutions.coordinates(hg.flatten(xi));
            for (std::size_t r = 0; r < hg.dim(); ++r)
                if (!coords.is_zero_at(0, r)) m.set(r, k, coords.get(0, r));
        }
        comps.push_back(std::move(m));
    }
    return NatTransform{pf.module, pg.module, comps};
}

Sheafification sheafify(const PresheafModule& f, const CoveringOracle& o) {
    auto p1 = plus_construction(f, o);
    auto p2 = plus_construction(p1.module, o);
    std::vector<Matrix> unit;
    for (std::size_t a = 0; a < f.category()->size(); ++a) unit.push_back(p2.unit.components[a] * p1.unit.components[a]);
    return Sheafification{p2.module, NatTransform{f, p2.module, unit}};
}

Sheafification sheafify(const PresheafModule& f, const CoverSystem& t, const Caps& caps) {
    return sheafify(f, CoveringOracle(t, caps));
}

PresheafModule onesided_sheafify(const PresheafModule& f, int side, const CoveringOracle& factor) {
    if (side != 1 && side != 2) throw PreconditionError("onesided_sheafify: side must be 1 or 2");
    const auto& ab = f.category();
    if (!ab->factors()) throw PreconditionError("onesided_sheafify: module does not live on a tensor category");
    const auto& a = ab->factors()->a;
    const auto& b = ab->factors()->b;
    const std::size_t na = a->size(), nb = b->size(), N = na * nb;
    // the sheafified variable lives on `var`, the frozen one on `other`
    const CategoryPtr& var = side == 1 ? a : b;
    const CategoryPtr& other = side == 1 ? b : a;
    if (!structurally_equal(*var, *factor.category()))
        throw PreconditionError("onesided_sheafify: topology does not live on the chosen factor");
    auto obj = [&](std::size_t v, std::size_t w) { return side == 1 ? v * nb + w : w * nb + v; };

    struct Frozen {
        PlusResult p1, p2;
    };
    std::vector<Frozen> frozen;
    for (std::size_t w = 0; w < other->size(); ++w) {
        auto slice = side == 1 ? slice_first(ab, w) : slice_second(ab, w);
        auto fw = restrict_module(slice, f);
        auto p1 = plus_construction(fw, factor);
        auto p2 = plus_construction(p1.module, factor);
        frozen.push_back({std::move(p1), std::move(p2)});
    }
    std::vector<std::size_t> dims(N);
    for (std::size_t v = 0; v < var->size(); ++v)
        for (std::size_t w = 0; w < other->size(); ++w) dims[obj(v, w)] = frozen[w].p2.module.dim(v);

    // a(F(1 (x) e'_j)) for every basis e'_j of hom(w', w) in the frozen factor
    auto frozen_map = [&](std::size_t wp, std::size_t w, std::size_t j) {
        std::vector<Matrix> comps;
        for (std::size_t x = 0; x < var->size(); ++x) {
            Matrix idx = var->identity(x);
            Matrix e = other->basis_vector(wp, w, j);
            Matrix mor = side == 1 ? idx.kron(e) : e.kron(idx);
            comps.push_back(f.act(obj(x, wp), obj(x, w), mor));
        }
        NatTransform eta{frozen[w].p1.unit.source, frozen[wp].p1.unit.source, comps};
        auto once = plus_map(eta, frozen[w].p1, frozen[wp].p1, factor);
        return plus_map(once, frozen[w].p2, frozen[wp].p2, factor);
    };

    std::vector<std::vector<Matrix>> act(N * N);
    for (std::size_t wp = 0; wp < other->size(); ++wp)
        for (std::size_t w = 0; w < other->size(); ++w) {
            const std::size_t dw = other->hom_dim(wp, w);
            std::vector<NatTransform> maps;
            for (std::size_t j = 0; j < dw; ++j) maps.push_back(frozen_map(wp, w, j));
            for (std::size_t vp = 0; vp < var->size(); ++vp)
                for (std::size_t v = 0; v < var->size(); ++v) {
                    const std::size_t dv = var->hom_dim(vp, v);
                    std::vector<Matrix> slot(dv * dw);
                    for (std::size_t i = 0; i < dv; ++i)
                        for (std::size_t j = 0; j < dw; ++j) {
                            // G(e_i (x) e'_j) = a(F(1 (x) e'_j))_{v'} o G_w(e_i)
                            Matrix m = maps[j].components[vp] * frozen[w].p2.module.basis_action(vp, v, i);
                            // basis pairs are ordered first factor major
                            slot[side == 1 ? i * dw + j : j * dv + i] = std::move(m);
                        }
                    act[obj(vp, wp) * N + obj(v, w)] = std::move(slot);
                }
        }
    return PresheafModule(ab, dims, act);
}

CoverSystem topology_from_null_class(const CoveringOracle& o) {
    const auto& cp = o.category();
    CoverSystem out{cp, std::vector<std::vector<Sieve>>(cp->size()), Mode::raw, false};
    for (std::size_t a = 0; a < cp->size(); ++a)
        for (const auto& r : enumerate_sieves(cp, a, o.caps()))
            if (is_null_presheaf(quotient_of_representable(r), o)) out.basics[a].push_back(r);
    return out;
}

}  // namespace lsite
