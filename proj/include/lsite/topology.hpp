#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lsite/sieve.hpp"

namespace lsite {

// raw: covering sieves are exactly the basics; up: sieves containing a basic;
// upglue: least fixed point of up-closure and glueing.
enum class Mode { raw, up, upglue };
std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

struct CoverSystem {
    CategoryPtr category;
    std::vector<std::vector<Sieve>> basics;  // per object
    Mode mode = Mode::up;
    // Set when the closure is known to be a topology (by construction or by a check).
    bool certified = false;
};

ValidationReport validate_cover_system(const CoverSystem& t);

struct DerivationStep {
    enum class Kind { basic, up, glue, minimal };
    Kind kind;
    std::size_t object;
    Sieve sieve;
    std::size_t round = 0;
    // basic/up: index into the basics at object; glue: step deriving the cover R.
    std::size_t via = 0;
    // glue: steps deriving the pullbacks f^{-1}(sieve), f in R.
    std::vector<std::size_t> premises;
    // minimal: the minimal cover the sieve contains.
    std::optional<Sieve> cover;
};
std::string to_string(DerivationStep::Kind k);

// Steps in dependency order; the last step derives the queried sieve.
struct Witness {
    std::vector<DerivationStep> steps;
};

struct CoveringVerdict {
    bool covering = false;
    std::optional<Witness> witness;
};

enum class Engine { automatic, exhaustive, minimal };

// Decides covering-ness for a fixed system. The exhaustive engine computes the
// closure over all sieves; the minimal engine is used for upglue systems whose
// up-closure is localizing, where covers are exactly the sieves containing M(A).
class CoveringOracle {
public:
    explicit CoveringOracle(CoverSystem t, const Caps& caps = {}, Engine engine = Engine::automatic);

    const CoverSystem& system() const { return t_; }
    const CategoryPtr& category() const { return t_.category; }
    const Caps& caps() const { return caps_; }
    // Engine in use for upglue systems (raw/up are decided directly and report automatic).
    Engine engine() const { return engine_; }
    // Covers are exactly the sieves containing minimal_cover(A), at every object.
    bool principal() const { return principal_; }

    bool covers(const Sieve& s) const;
    CoveringVerdict is_covering(const Sieve& s) const;
    const Sieve& minimal_cover(std::size_t a) const;
    std::vector<Sieve> covering_sieves(std::size_t a) const;
    // Sieves on a, from the exhaustive table when there is one.
    std::vector<Sieve> all_sieves(std::size_t a) const;

private:
    struct Record {
        long round = -1;  // -1: not covering
        DerivationStep::Kind kind = DerivationStep::Kind::basic;
        std::size_t via = 0;
        std::size_t via_sieve = 0;
        std::vector<std::pair<std::size_t, std::size_t>> premises;  // (object, sieve index)
    };

    void run_exhaustive();
    void run_minimal();
    std::size_t index_of(const Sieve& s) const;
    Witness build_witness(std::size_t a, std::size_t idx) const;

    CoverSystem t_;
    Caps caps_;
    Engine engine_ = Engine::automatic;
    bool principal_ = false;
    std::vector<std::optional<Sieve>> minimal_;
    std::vector<std::vector<Sieve>> sieves_;        // exhaustive only
    std::vector<std::vector<Record>> records_;      // exhaustive only
};

bool replay(const CoverSystem& t, const Sieve& s, const Witness& w, std::string* why = nullptr);

// Identity and pullback axioms, then glueing.
ValidationReport check_localizing(const CoveringOracle& o);
ValidationReport check_topology(const CoveringOracle& o);
ValidationReport check_localizing(const CoverSystem& t, const Caps& caps = {});
ValidationReport check_topology(const CoverSystem& t, const Caps& caps = {});

// Cheap certificate: every basic pulls back to a sieve containing a basic.
bool up_closure_localizing(const CoverSystem& t, const Caps& caps = {});

std::vector<Sieve> enumerate_covering_sieves(const CoverSystem& t, std::size_t a, const Caps& caps = {});
Sieve minimal_cover(const CoverSystem& t, std::size_t a, const Caps& caps = {});

// Generating family of a topology at a: the basics in mode up, {M(a)} when principal,
// otherwise all covering sieves.
std::vector<Sieve> generating_family(const CoveringOracle& o, std::size_t a);

CoverSystem trivial_topology(const CategoryPtr& c);
CoverSystem discrete_topology(const CategoryPtr& c);
CoverSystem topology_inf(const std::vector<CoverSystem>& ts, const Caps& caps = {});
CoverSystem topology_sup(const std::vector<CoverSystem>& ts, const Caps& caps = {});

// Drops duplicate basics and basics strictly containing another basic at the same object.
CoverSystem pruned(const CoverSystem& t);

// Smallest topology on ab containing R_a = {G (x) full} and R_b = {full (x) G}.
CoverSystem tensor_topology(const CategoryPtr& ab, const CoverSystem& ta, const CoverSystem& tb,
                            const Caps& caps = {});
CoverSystem tensor_topology(const CoverSystem& ta, const CoverSystem& tb, const Caps& caps = {});
// T_1 = R_a^up (side 1) or T_2 = R_b^up (side 2).
CoverSystem one_sided(const CategoryPtr& ab, const CoverSystem& ta, const CoverSystem& tb, int side,
                      const Caps& caps = {});

struct Deflation {
    std::size_t source, target;
    Matrix morphism;
};
CoverSystem single_deflation_system(const CategoryPtr& c, const std::vector<Deflation>& deflations);

// Same covering sieves at every object (by enumeration).
bool same_covering_sieves(const CoveringOracle& x, const CoveringOracle& y);

}  // namespace lsite
