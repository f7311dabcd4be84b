#pragma once

#include <string>
#include <vector>

#include "lsite/topology.hpp"

namespace lsite::fixtures {

// One object "*" with hom k.
CategoryPtr point(const Field& f = Field::prime(2));
// Objects 1, 2; hom(1,2) = span{alpha}; endomorphisms spanned by identities.
CategoryPtr s1(const Field& f = Field::prime(2));
// s1 with the structure constant id2 o alpha set to zero.
CategoryData s1_broken_data(const Field& f = Field::prime(2));
// s1 with alpha killed: hom(1,2) = 0.
CategoryPtr s1_mod_alpha(const Field& f = Field::prime(2));
// Full matrix category: objects k^{d_i}, hom(a,b) = Mat(d_b x d_a), basis E_rc row-major.
CategoryPtr matrix_category(const Field& f, const std::vector<std::size_t>& dims,
                            const std::vector<std::string>& names);

// Objects 1, 2 with arrows both ways; hom(x,y) has a basis of the paths of length <= 2 from
// x to y, and longer paths vanish.
CategoryPtr two_cycle(const Field& f = Field::prime(2));

// Subcategories {1} and {2} of s1 with their inclusions.
LinearFunctor s1_include_1(const CategoryPtr& s1c);
LinearFunctor s1_include_2(const CategoryPtr& s1c);
// s1 -> s1/<alpha>.
LinearFunctor s1_quotient(const CategoryPtr& s1c);

// Modules on s1: simple at 1, simple at 2, and k -> k with alpha acting as 1.
PresheafModule s1_simple(const CategoryPtr& s1c, std::size_t object);
PresheafModule s1_line(const CategoryPtr& s1c);

// <alpha>, the sieve on 2 generated by alpha.
Sieve s1_alpha_sieve(const CategoryPtr& s1c);

// {<alpha> at 2, full at 1}, mode up.
CoverSystem s1_alpha_system(const CategoryPtr& s1c);
// {full at 2, zero at 1}, mode up: null presheaves are the modules supported at 1.
CoverSystem s1_supp1_system(const CategoryPtr& s1c);
// {<alpha> at 2} and nothing at 1, mode raw.
CoverSystem s1_raw_singleton(const CategoryPtr& s1c);
// {full at 2} and nothing at 1, mode up.
CoverSystem s1_empty_at_1(const CategoryPtr& s1c);

}  // namespace lsite::fixtures
