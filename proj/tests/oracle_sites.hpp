#pragma once

// Brute-force covering, sheaf and null-presheaf oracles over F_2. Sieves are per-object
// mask sets; closures are computed directly from the definitions.

#include <map>

#include "lsite/topology.hpp"
#include "oracle.hpp"

namespace oracle {

using SieveMasks = std::vector<MaskSet>;
using CoverSets = std::vector<std::set<SieveMasks>>;

inline bool contains(const SieveMasks& big, const SieveMasks& small) {
    for (std::size_t b = 0; b < big.size(); ++b)
        for (auto x : small[b])
            if (!big[b].count(x)) return false;
    return true;
}

// f^{-1}s for f in hom(b, a), s a sieve on a.
inline SieveMasks pullback(const lsite::FiniteLinearCategory& c, std::size_t b, std::size_t a, unsigned f,
                           const SieveMasks& s) {
    SieveMasks out(c.size());
    for (std::size_t x = 0; x < c.size(); ++x)
        for (unsigned g = 0; g < (1u << c.hom_dim(x, b)); ++g)
            if (s[x].count(compose_mask(c, x, b, a, f, g))) out[x].insert(g);
    return out;
}

// Covering sieves of a system; upglue is the least set closed under up and glueing.
inline CoverSets covering(const lsite::CoverSystem& t) {
    const auto& c = *t.category;
    const std::size_t n = c.size();
    std::vector<std::set<SieveMasks>> all(n);
    CoverSets cov(n);
    for (std::size_t a = 0; a < n; ++a) {
        all[a] = all_sieves(c, a);
        for (const auto& s : all[a])
            for (const auto& b : t.basics[a]) {
                auto bm = sieve_masks(b);
                if (t.mode == lsite::Mode::raw ? bm == s : contains(s, bm)) cov[a].insert(s);
            }
    }
    if (t.mode != lsite::Mode::upglue) return cov;
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t a = 0; a < n; ++a)
            for (const auto& s : all[a]) {
                if (cov[a].count(s)) continue;
                for (const auto& r : CoverSets::value_type(cov[a])) {
                    bool ok = true;
                    for (std::size_t b = 0; b < n && ok; ++b)
                        for (auto f : r[b])
                            if (!cov[b].count(pullback(c, b, a, f, s))) {
                                ok = false;
                                break;
                            }
                    if (ok) {
                        cov[a].insert(s);
                        grew = true;
                        break;
                    }
                }
            }
    }
    return cov;
}

inline CoverSets covering_from(const lsite::CoveringOracle& o) {
    CoverSets out(o.category()->size());
    for (std::size_t a = 0; a < out.size(); ++a)
        for (const auto& s : o.covering_sieves(a)) out[a].insert(sieve_masks(s));
    return out;
}

inline lsite::Matrix act_mask(const lsite::PresheafModule& f, std::size_t b, std::size_t a, unsigned r,
                              const lsite::Matrix& x) {
    return lsite::apply(f.act(b, a, from_mask(r, f.category()->hom_dim(b, a))), x);
}

// Every nonzero x in F(a) survives some r in R, and every natural R -> F comes from F(a).
inline bool sheaf_at(const lsite::PresheafModule& f, std::size_t a, const SieveMasks& r) {
    const auto& c = *f.category();
    const std::size_t n = c.size();
    for (unsigned x = 1; x < (1u << f.dim(a)); ++x) {
        bool killed = true;
        for (std::size_t b = 0; b < n && killed; ++b)
            for (auto g : r[b])
                if (!act_mask(f, b, a, g, from_mask(x, f.dim(a))).is_zero()) {
                    killed = false;
                    break;
                }
        if (killed) return false;
    }
    // count natural transformations as functions R(b) -> F(b) on all elements
    std::vector<std::vector<unsigned>> elems(n);
    std::vector<std::vector<unsigned>> basis(n);
    for (std::size_t b = 0; b < n; ++b) {
        elems[b].assign(r[b].begin(), r[b].end());
        MaskSet spanned{0};
        for (auto v : elems[b])
            if (!spanned.count(v)) {
                basis[b].push_back(v);
                spanned = span_masks(basis[b]);
            }
    }
    // a linear map on R(b) is fixed by the images of basis[b]
    std::vector<std::size_t> slots;
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t i = 0; i < basis[b].size(); ++i) slots.push_back(b);
    std::size_t bits = 0;
    for (auto b : slots) bits += f.dim(b);
    if (bits > 20) throw std::runtime_error("oracle: hom search too large");
    std::size_t count = 0;
    for (unsigned long code = 0; code < (1ul << bits); ++code) {
        // eta[b]: element mask of R(b) -> element mask of F(b)
        std::vector<std::map<unsigned, unsigned>> eta(n);
        unsigned long rest = code;
        for (std::size_t b = 0; b < n; ++b) {
            std::vector<unsigned> imgs;
            for (std::size_t i = 0; i < basis[b].size(); ++i) {
                imgs.push_back(static_cast<unsigned>(rest & ((1ul << f.dim(b)) - 1)));
                rest >>= f.dim(b);
            }
            for (unsigned sel = 0; sel < (1u << basis[b].size()); ++sel) {
                unsigned v = 0, img = 0;
                for (std::size_t i = 0; i < basis[b].size(); ++i)
                    if (sel >> i & 1u) {
                        v ^= basis[b][i];
                        img ^= imgs[i];
                    }
                eta[b][v] = img;
            }
        }
        bool natural = true;
        for (std::size_t b = 0; b < n && natural; ++b)
            for (auto v : elems[b])
                for (std::size_t bp = 0; bp < n && natural; ++bp)
                    for (unsigned g = 0; g < (1u << c.hom_dim(bp, b)); ++g) {
                        unsigned lhs = eta[bp].at(compose_mask(c, bp, b, a, v, g));
                        unsigned rhs = to_mask(act_mask(f, bp, b, g, from_mask(eta[b][v], f.dim(b))));
                        if (lhs != rhs) {
                            natural = false;
                            break;
                        }
                    }
        if (natural) ++count;
    }
    return count == (1u << f.dim(a));
}

inline bool is_sheaf(const lsite::PresheafModule& f, const CoverSets& cov) {
    for (std::size_t a = 0; a < cov.size(); ++a)
        for (const auto& r : cov[a])
            if (!sheaf_at(f, a, r)) return false;
    return true;
}

inline bool is_null(const lsite::PresheafModule& f, const CoverSets& cov) {
    for (std::size_t a = 0; a < cov.size(); ++a)
        for (unsigned x = 1; x < (1u << f.dim(a)); ++x) {
            bool killed_somewhere = false;
            for (const auto& r : cov[a]) {
                bool killed = true;
                for (std::size_t b = 0; b < cov.size() && killed; ++b)
                    for (auto g : r[b])
                        if (!act_mask(f, b, a, g, from_mask(x, f.dim(a))).is_zero()) {
                            killed = false;
                            break;
                        }
                if (killed) {
                    killed_somewhere = true;
                    break;
                }
            }
            if (!killed_somewhere) return false;
        }
    return true;
}

}  // namespace oracle
