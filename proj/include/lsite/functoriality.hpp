#pragma once

#include <string>
#include <vector>

#include "lsite/sheaf.hpp"

namespace lsite {

struct SiteMorphism {
    LinearFunctor functor;
    CoverSystem source, target;
};

ValidationReport validate_site_morphism(const SiteMorphism& m);

enum class Property { G, F, FF, LC, continuous, cocontinuous };
std::string to_string(Property p);
Property property_from_string(const std::string& s);

struct PropertyReport {
    Property property = Property::G;
    bool verdict = true;
    std::vector<Finding> counterexamples;
    // Scope of the verdict (probe inventory, bounds, window labels).
    std::vector<std::string> notes;
    std::string severity = "normal";

    void fail(Finding f) {
        verdict = false;
        counterexamples.push_back(std::move(f));
    }
};

// How a sieve R on A is compared with the target topology in (LC):
// image_generated: the sieve generated by phi(R) covers phi(A);
// pointwise: R contains phi^{-1}(S) for some cover S of phi(A).
enum class LcConvention { image_generated, pointwise };

// Oracles built once per morphism; the checkers accept either form.
struct SiteOracles {
    explicit SiteOracles(const SiteMorphism& m, const Caps& caps = {});
    SiteMorphism morphism;
    CoveringOracle source, target;
};

// Sieve on C generated by all morphisms phi(A) -> C.
Sieve image_objects_sieve(const LinearFunctor& phi, std::size_t c);
// S_c = { a in hom(-,A) | c o phi(a) in phi(hom(-,A')) } for c in hom(phi A, phi A').
Sieve fullness_sieve(const LinearFunctor& phi, std::size_t a, std::size_t a_prime, const Matrix& c);
// K_a = { h | a o h = 0 } for a in hom(A, A').
Sieve annihilator_sieve(const CategoryPtr& cat, std::size_t a, std::size_t a_prime, const Matrix& f);

PropertyReport check_G(const SiteOracles& o);
PropertyReport check_F(const SiteOracles& o);
PropertyReport check_FF(const SiteOracles& o);
PropertyReport check_cocontinuous(const SiteOracles& o);
// Probes live on the target; with bound > 0 all modules with spaces of dimension <= bound are
// added when their enumeration fits the caps.
PropertyReport check_continuous(const SiteOracles& o, const std::vector<PresheafModule>& probes,
                                std::size_t bound = 0);
PropertyReport check_LC(const SiteOracles& o, LcConvention conv = LcConvention::image_generated);

PropertyReport check_G(const SiteMorphism& m, const Caps& caps = {});
PropertyReport check_F(const SiteMorphism& m, const Caps& caps = {});
PropertyReport check_FF(const SiteMorphism& m, const Caps& caps = {});
PropertyReport check_cocontinuous(const SiteMorphism& m, const Caps& caps = {});
PropertyReport check_continuous(const SiteMorphism& m, const std::vector<PresheafModule>& probes,
                                std::size_t bound = 0, const Caps& caps = {});
PropertyReport check_LC(const SiteMorphism& m, LcConvention conv = LcConvention::image_generated,
                        const Caps& caps = {});
PropertyReport check_property(const SiteMorphism& m, Property p, const Caps& caps = {});

// phi (x) psi between the tensor sites.
SiteMorphism tensor_site_morphism(const SiteMorphism& m1, const SiteMorphism& m2, const Caps& caps = {});
// Checks the property for m1 and m2 (PreconditionError if either fails), then for their tensor
// product; a failure there is reported with severity "high".
PropertyReport verify_tensor_preservation(const SiteMorphism& m1, const SiteMorphism& m2, Property p,
                                          const Caps& caps = {});

}  // namespace lsite
