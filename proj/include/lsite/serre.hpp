#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "lsite/sheaf.hpp"

namespace lsite {

using ModulePredicate = std::function<bool(const PresheafModule&)>;

// Membership in the localizing subcategory of null presheaves of a topology.
ModulePredicate null_class(std::shared_ptr<const CoveringOracle> o);
// F(B) = 0 for every object B outside the list.
ModulePredicate supported_on(std::vector<std::size_t> objects);
ModulePredicate is_simple_module(const Caps& caps = {});
ModulePredicate either(ModulePredicate p, ModulePredicate q);

// Some submodule W of c has w1(W) and w2(c/W).
bool gabriel_product_member(const PresheafModule& c, const ModulePredicate& w1, const ModulePredicate& w2,
                            const Caps& caps = {});

// A chain 0 = M_0 < ... < M_n = c, n <= max_len, with every M_{i+1}/M_i satisfying h.
// Returns the chain when one exists.
std::optional<std::vector<Submodule>> hull_filtration(const PresheafModule& c, const ModulePredicate& h,
                                                      std::size_t max_len, const Caps& caps = {});
bool sloc_hull_member(const PresheafModule& c, const ModulePredicate& h, std::size_t max_len,
                      const Caps& caps = {});

}  // namespace lsite
