#pragma once

#include "lsite/topology.hpp"

namespace lsite {

// The sieve as a module, with the canonical basis of each component.
PresheafModule sieve_module(const Sieve& s);

// F(A) -> hom(R, F), x |-> (r |-> F(r)x), is an isomorphism for the covering sieve R on A.
bool sheaf_condition_at(const PresheafModule& f, const Sieve& r);

bool is_sheaf(const PresheafModule& f, const CoveringOracle& o);
bool is_sheaf(const PresheafModule& f, const CoverSystem& t, const Caps& caps = {});
bool is_null_presheaf(const PresheafModule& f, const CoveringOracle& o);
bool is_null_presheaf(const PresheafModule& f, const CoverSystem& t, const Caps& caps = {});

// F^+(A) = hom(M(A), F) with M the minimal covers; homs[A] holds the coordinates used.
struct PlusResult {
    PresheafModule module;
    NatTransform unit;
    std::vector<HomSpace> homs;
};
PlusResult plus_construction(const PresheafModule& f, const CoveringOracle& o);
// eta^+ : F^+ -> G^+ for eta : F -> G.
NatTransform plus_map(const NatTransform& eta, const PlusResult& pf, const PlusResult& pg,
                      const CoveringOracle& o);

struct Sheafification {
    PresheafModule sheaf;
    NatTransform unit;  // F -> F^{++}
};
Sheafification sheafify(const PresheafModule& f, const CoveringOracle& o);
Sheafification sheafify(const PresheafModule& f, const CoverSystem& t, const Caps& caps = {});

// Sheafifies F(-,B) (side 1) or F(A,-) (side 2) for every frozen object of the other factor.
PresheafModule onesided_sheafify(const PresheafModule& f, int side, const CoveringOracle& factor);

// Raw system whose covers are the R with a(-,A)/R null for o.
CoverSystem topology_from_null_class(const CoveringOracle& o);

}  // namespace lsite
