#include "lsite/functoriality.hpp"

namespace lsite {

std::string to_string(Property p) {
    switch (p) {
        case Property::G: return "G";
        case Property::F: return "F";
        case Property::FF: return "FF";
        case Property::LC: return "LC";
        case Property::continuous: return "continuous";
        case Property::cocontinuous: return "cocontinuous";
    }
    return "?";
}

Property property_from_string(const std::string& s) {
    for (Property p : {Property::G, Property::F, Property::FF, Property::LC, Property::continuous,
                       Property::cocontinuous})
        if (to_string(p) == s) return p;
    throw InputError("unknown property '" + s + "'");
}

ValidationReport validate_site_morphism(const SiteMorphism& m) {
    ValidationReport rep = validate_functor(m.functor);
    if (!structurally_equal(*m.functor.source(), *m.source.category))
        rep.fail({"source", {}, {}, "functor source is not the source site's category"});
    if (!structurally_equal(*m.functor.target(), *m.target.category))
        rep.fail({"target", {}, {}, "functor target is not the target site's category"});
    return rep;
}

SiteOracles::SiteOracles(const SiteMorphism& m, const Caps& caps)
    : morphism(m), source(m.source, caps), target(m.target, caps) {
    if (!structurally_equal(*m.functor.source(), *m.source.category) ||
        !structurally_equal(*m.functor.target(), *m.target.category))
        throw PreconditionError("site morphism: functor and cover systems live on different categories");
}

namespace {

void add_sieve(Finding& f, const std::string& prefix, const Sieve& s) {
    const auto& c = *s.category();
    for (std::size_t b = 0; b < s.components().size(); ++b)
        if (c.hom_dim(b, s.target()) > 0) f.data.emplace_back(prefix + "(" + c.name(b) + ")", s.component(b).basis());
}

// hom(b, a') -> hom(phi b, phi a') is onto for every b.
bool full_into(const LinearFunctor& phi, std::size_t a_prime) {
    const auto& s = *phi.source();
    for (std::size_t b = 0; b < s.size(); ++b)
        if (rank(phi.hom_map(b, a_prime)) != phi.target()->hom_dim(phi.object(b), phi.object(a_prime))) return false;
    return true;
}

bool fully_faithful(const LinearFunctor& phi) {
    const auto& s = *phi.source();
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b) {
            const Matrix& h = phi.hom_map(a, b);
            const std::size_t r = rank(h);
            if (r != s.hom_dim(a, b) || r != phi.target()->hom_dim(phi.object(a), phi.object(b))) return false;
        }
    return true;
}

void merge(PropertyReport& into, const PropertyReport& from) {
    for (const auto& c : from.counterexamples) into.fail(c);
    for (const auto& n : from.notes) into.notes.push_back(to_string(from.property) + ": " + n);
}

}  // namespace

Sieve image_objects_sieve(const LinearFunctor& phi, std::size_t c) {
    const auto& t = phi.target();
    std::vector<Generator> gens;
    for (std::size_t a = 0; a < phi.source()->size(); ++a)
        for (std::size_t i = 0; i < t->hom_dim(phi.object(a), c); ++i)
            gens.push_back({phi.object(a), t->basis_vector(phi.object(a), c, i)});
    return sieve_from_generators(t, c, gens);
}

Sieve fullness_sieve(const LinearFunctor& phi, std::size_t a, std::size_t a_prime, const Matrix& c) {
    const auto& s = phi.source();
    const auto& t = *phi.target();
    std::vector<Subspace> comps;
    for (std::size_t b = 0; b < s->size(); ++b) {
        if (s->hom_dim(b, a) == 0) {
            comps.emplace_back(s->field(), 0);
            continue;
        }
        Matrix m = t.post_compose(phi.object(b), phi.object(a), phi.object(a_prime), c) * phi.hom_map(b, a);
        comps.push_back(preimage(m, image(phi.hom_map(b, a_prime))));
    }
    return Sieve(s, a, comps);
}

Sieve annihilator_sieve(const CategoryPtr& cat, std::size_t a, std::size_t a_prime, const Matrix& f) {
    std::vector<Subspace> comps;
    for (std::size_t x = 0; x < cat->size(); ++x) {
        if (cat->hom_dim(x, a) == 0) {
            comps.emplace_back(cat->field(), 0);
            continue;
        }
        comps.push_back(kernel(cat->post_compose(x, a, a_prime, f)));
    }
    return Sieve(cat, a, comps);
}

PropertyReport check_G(const SiteOracles& o) {
    PropertyReport rep;
    rep.property = Property::G;
    const auto& phi = o.morphism.functor;
    const auto& t = *phi.target();
    for (std::size_t c = 0; c < t.size(); ++c) {
        Sieve s = image_objects_sieve(phi, c);
        // the same sieve from the composites e o phi(g)
        std::vector<Generator> gens;
        for (std::size_t a = 0; a < phi.source()->size(); ++a)
            for (std::size_t ap = 0; ap < phi.source()->size(); ++ap)
                for (std::size_t i = 0; i < t.hom_dim(phi.object(ap), c); ++i)
                    for (std::size_t j = 0; j < phi.source()->hom_dim(a, ap); ++j)
                        gens.push_back({phi.object(a),
                                        t.compose(phi.object(a), phi.object(ap), c, t.basis_vector(phi.object(ap), c, i),
                                                  phi.apply(a, ap, phi.source()->basis_vector(a, ap, j)))});
        if (sieve_from_generators(phi.target(), c, gens) != s)
            throw std::logic_error("check_G: the two descriptions of the image sieve differ");
        if (!o.target.covers(s)) {
            Finding f{"G", {t.name(c)}, {}, "sieve generated by morphisms from the image is not covering"};
            add_sieve(f, "S", s);
            rep.fail(std::move(f));
        }
    }
    return rep;
}

PropertyReport check_F(const SiteOracles& o) {
    PropertyReport rep;
    rep.property = Property::F;
    const auto& phi = o.morphism.functor;
    const auto& s = *phi.source();
    const auto& t = *phi.target();
    std::size_t skipped = 0;
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t ap = 0; ap < s.size(); ++ap) {
            if (full_into(phi, ap)) {
                ++skipped;  // every S_c is full
                continue;
            }
            const std::size_t d = t.hom_dim(phi.object(a), phi.object(ap));
            checked_power(t.field(), d, o.source.caps().enum_vectors, "cap-enum");
            for (const auto& c : enumerate_vectors(t.full_hom(phi.object(a), phi.object(ap)),
                                                   o.source.caps().enum_vectors)) {
                Sieve sc = fullness_sieve(phi, a, ap, c);
                if (!o.source.covers(sc)) {
                    Finding f{"F", {s.name(a), s.name(ap)}, {{"c", c}}, "S_c is not covering"};
                    add_sieve(f, "S_c", sc);
                    rep.fail(std::move(f));
                }
            }
        }
    rep.notes.push_back(std::to_string(skipped) + " object pairs skipped: phi is full into A'");
    return rep;
}

PropertyReport check_FF(const SiteOracles& o) {
    PropertyReport rep;
    rep.property = Property::FF;
    const auto& phi = o.morphism.functor;
    const auto& s = *phi.source();
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t ap = 0; ap < s.size(); ++ap) {
            if (s.hom_dim(a, ap) == 0) continue;
            Subspace k = kernel(phi.hom_map(a, ap));
            if (k.is_zero()) continue;
            for (const auto& f : enumerate_vectors(k, o.source.caps().enum_vectors)) {
                if (f.is_zero()) continue;
                Sieve ka = annihilator_sieve(phi.source(), a, ap, f);
                if (!o.source.covers(ka)) {
                    Finding fd{"FF", {s.name(a), s.name(ap)}, {{"a", f}}, "K_a is not covering"};
                    add_sieve(fd, "K_a", ka);
                    rep.fail(std::move(fd));
                }
            }
        }
    return rep;
}

PropertyReport check_cocontinuous(const SiteOracles& o) {
    PropertyReport rep;
    rep.property = Property::cocontinuous;
    const auto& phi = o.morphism.functor;
    const auto& s = *phi.source();
    for (std::size_t a = 0; a < s.size(); ++a)
        for (const auto& r : generating_family(o.target, phi.object(a))) {
            Sieve p = functor_preimage_sieve(phi, a, r);
            if (!o.source.covers(p)) {
                Finding f{"cocontinuous", {s.name(a), phi.target()->name(phi.object(a))}, {},
                          "phi^-1 R is not covering"};
                add_sieve(f, "R", r);
                add_sieve(f, "phi^-1 R", p);
                rep.fail(std::move(f));
            }
        }
    return rep;
}

PropertyReport check_continuous(const SiteOracles& o, const std::vector<PresheafModule>& probes,
                                std::size_t bound) {
    PropertyReport rep;
    rep.property = Property::continuous;
    const auto& phi = o.morphism.functor;
    std::vector<PresheafModule> all = probes;
    rep.notes.push_back("probes: " + std::to_string(probes.size()));
    if (bound > 0) {
        try {
            auto more = enumerate_modules_bounded(phi.target(), bound, o.target.caps());
            rep.notes.push_back("enumerated modules with spaces of dimension <= " + std::to_string(bound) + ": " +
                                std::to_string(more.size()));
            all.insert(all.end(), more.begin(), more.end());
        } catch (const CapExceeded& e) {
            rep.notes.push_back("enumeration with bound " + std::to_string(bound) + " skipped: " + e.cap());
        }
    }
    std::size_t sheaves = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const auto& f = all[i];
        if (!is_sheaf(f, o.target)) continue;
        ++sheaves;
        if (!is_sheaf(restrict_module(phi, f), o.source)) {
            Finding fd{"continuous", {}, {}, "restriction of a sheaf is not a sheaf"};
            fd.detail += i < probes.size() ? " (probe " + std::to_string(i) + ")"
                                           : " (enumerated module " + std::to_string(i - probes.size()) + ")";
            for (std::size_t a = 0; a < f.dims().size(); ++a)
                fd.data.emplace_back("dim " + phi.target()->name(a), Matrix::from_ints(f.field(), 1, 1, {static_cast<std::int64_t>(f.dim(a))}));
            rep.fail(std::move(fd));
        }
    }
    rep.notes.push_back("sheaves tested: " + std::to_string(sheaves));
    return rep;
}

PropertyReport check_LC(const SiteOracles& o, LcConvention conv) {
    PropertyReport rep;
    rep.property = Property::LC;
    merge(rep, check_G(o));
    merge(rep, check_F(o));
    merge(rep, check_FF(o));
    const auto& phi = o.morphism.functor;
    const auto& s = *phi.source();
    const bool ff = fully_faithful(phi);
    const bool principal = o.source.principal() && o.target.principal();
    rep.notes.push_back(conv == LcConvention::image_generated ? "convention: image-generated"
                                                              : "convention: pointwise");
    bool forward = true, backward = true;  // T_a in phi^-1 T_c, and the converse
    auto in_target = [&](const Sieve& r) {
        if (conv == LcConvention::image_generated) return o.target.covers(image_sieve(phi, r));
        for (const auto& g : generating_family(o.target, phi.object(r.target())))
            if (sieve_contains(r, functor_preimage_sieve(phi, r.target(), g))) return true;
        return false;
    };
    auto report = [&](const Sieve& r, bool covering) {
        Finding f{covering ? "LC-source-to-target" : "LC-target-to-source", {s.name(r.target())}, {},
                  covering ? "covering sieve whose image is not covering"
                           : "non-covering sieve whose image is covering"};
        add_sieve(f, "R", r);
        (covering ? forward : backward) = false;
        rep.fail(std::move(f));
    };
    std::size_t fast = 0;
    for (std::size_t a = 0; a < s.size(); ++a) {
        if (principal) {
            const Sieve& ma = o.source.minimal_cover(a);
            const Sieve& mc = o.target.minimal_cover(phi.object(a));
            Sieve p = functor_preimage_sieve(phi, a, mc);
            if (conv == LcConvention::pointwise) {
                // R is in phi^-1 T_c iff R contains p
                ++fast;
                if (!sieve_contains(ma, p)) report(ma, true);
                if (!sieve_contains(p, ma)) report(p, false);
                continue;
            }
            if (ff && image_sieve(phi, p) == mc) {
                // for fully faithful phi, <phi R> contains mc iff R contains p
                ++fast;
                if (!o.target.covers(image_sieve(phi, ma))) report(ma, true);
                if (!sieve_contains(p, ma)) report(p, false);
                continue;
            }
        }
        for (const auto& r : o.source.all_sieves(a)) {
            const bool lhs = o.source.covers(r), rhs = in_target(r);
            if (lhs != rhs) report(r, lhs);
        }
    }
    if (fast > 0) rep.notes.push_back("objects decided from minimal covers: " + std::to_string(fast));
    rep.notes.push_back(std::string("T_a in phi^-1 T_c: ") + (forward ? "pass" : "fail"));
    rep.notes.push_back(std::string("phi^-1 T_c in T_a: ") + (backward ? "pass" : "fail"));
    return rep;
}

PropertyReport check_G(const SiteMorphism& m, const Caps& caps) { return check_G(SiteOracles(m, caps)); }
PropertyReport check_F(const SiteMorphism& m, const Caps& caps) { return check_F(SiteOracles(m, caps)); }
PropertyReport check_FF(const SiteMorphism& m, const Caps& caps) { return check_FF(SiteOracles(m, caps)); }
PropertyReport check_cocontinuous(const SiteMorphism& m, const Caps& caps) {
    return check_cocontinuous(SiteOracles(m, caps));
}
PropertyReport check_continuous(const SiteMorphism& m, const std::vector<PresheafModule>& probes, std::size_t bound,
                                const Caps& caps) {
    return check_continuous(SiteOracles(m, caps), probes, bound);
}
PropertyReport check_LC(const SiteMorphism& m, LcConvention conv, const Caps& caps) {
    return check_LC(SiteOracles(m, caps), conv);
}

PropertyReport check_property(const SiteMorphism& m, Property p, const Caps& caps) {
    SiteOracles o(m, caps);
    switch (p) {
        case Property::G: return check_G(o);
        case Property::F: return check_F(o);
        case Property::FF: return check_FF(o);
        case Property::LC: return check_LC(o);
        case Property::continuous: return check_continuous(o, {}, 1);
        case Property::cocontinuous: return check_cocontinuous(o);
    }
    throw PreconditionError("unknown property");
}

SiteMorphism tensor_site_morphism(const SiteMorphism& m1, const SiteMorphism& m2, const Caps& caps) {
    LinearFunctor f = tensor_functor(m1.functor, m2.functor);
    return {f, tensor_topology(f.source(), m1.source, m2.source, caps),
            tensor_topology(f.target(), m1.target, m2.target, caps)};
}

PropertyReport verify_tensor_preservation(const SiteMorphism& m1, const SiteMorphism& m2, Property p,
                                          const Caps& caps) {
    for (const auto* m : {&m1, &m2})
        if (!check_property(*m, p, caps).verdict)
            throw PreconditionError("verify_tensor_preservation: a factor does not satisfy " + to_string(p));
    PropertyReport rep = check_property(tensor_site_morphism(m1, m2, caps), p, caps);
    if (!rep.verdict) rep.severity = "high";
    return rep;
}

}  // namespace lsite
