#include "lsite/fixtures.hpp"

namespace lsite::fixtures {

CategoryPtr point(const Field& f) {
    return category_from_rule(
        f, {"*"}, {1}, {Matrix::from_ints(f, 1, 1, {1})},
        [f](std::size_t, std::size_t, std::size_t, std::size_t, std::size_t) { return Matrix::from_ints(f, 1, 1, {1}); },
        {{"id*"}});
}

namespace {

Matrix one(const Field& f) { return Matrix::from_ints(f, 1, 1, {1}); }

// every nonzero hom of s1 and its quotient is one-dimensional and all composites are the
// unique nonzero basis element, except where `kill` zeroes it
CategoryPtr s1_like(const Field& f, bool with_alpha, bool broken) {
    std::vector<std::size_t> dims = {1, with_alpha ? 1u : 0u, 0, 1};
    std::vector<std::vector<std::string>> labels = {{"id1"}, {}, {}, {"id2"}};
    if (with_alpha) labels[1] = {"alpha"};
    return category_from_rule(
        f, {"1", "2"}, dims, {one(f), one(f)},
        [f, broken](std::size_t x, std::size_t y, std::size_t z, std::size_t, std::size_t) {
            if (broken && x == 0 && y == 1 && z == 1) return Matrix(f, 1, 1);
            return one(f);
        },
        labels);
}

}  // namespace

CategoryPtr s1(const Field& f) { return s1_like(f, true, false); }

CategoryData s1_broken_data(const Field& f) { return s1_like(f, true, true)->data(); }

CategoryPtr s1_mod_alpha(const Field& f) { return s1_like(f, false, false); }

CategoryPtr matrix_category(const Field& f, const std::vector<std::size_t>& dims,
                            const std::vector<std::string>& names) {
    const std::size_t n = dims.size();
    std::vector<std::size_t> hd(n * n);
    std::vector<std::vector<std::string>> labels(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            hd[a * n + b] = dims[b] * dims[a];
            for (std::size_t r = 0; r < dims[b]; ++r)
                for (std::size_t c = 0; c < dims[a]; ++c)
                    labels[a * n + b].push_back("E" + std::to_string(r + 1) + std::to_string(c + 1) + ":" +
                                                names[a] + "->" + names[b]);
        }
    std::vector<Matrix> ids;
    for (std::size_t a = 0; a < n; ++a) {
        Matrix id(f, 1, dims[a] * dims[a]);
        for (std::size_t r = 0; r < dims[a]; ++r) id.set_int(0, r * dims[a] + r, 1);
        ids.push_back(id);
    }
    // E_rc (y->z) o E_st (x->y) = [c == s] E_rt (x->z)
    return category_from_rule(
        f, names, hd, ids,
        [f, dims](std::size_t x, std::size_t y, std::size_t z, std::size_t i, std::size_t j) {
            Matrix out(f, 1, dims[z] * dims[x]);
            const std::size_t r = i / dims[y], c = i % dims[y];
            const std::size_t s = j / dims[x], t = j % dims[x];
            if (c == s) out.set_int(0, r * dims[x] + t, 1);
            return out;
        },
        labels);
}

CategoryPtr two_cycle(const Field& f) {
    // lengths[x*2+y] lists the path lengths forming the basis of hom(x,y)
    std::vector<std::vector<std::size_t>> lengths(4);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t len = 0; len <= 2; ++len) lengths[x * 2 + (x + len) % 2].push_back(len);
    std::vector<std::size_t> dims;
    std::vector<std::vector<std::string>> labels(4);
    const std::vector<std::string> names = {"1", "2"};
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y) {
            dims.push_back(lengths[x * 2 + y].size());
            for (auto len : lengths[x * 2 + y])
                labels[x * 2 + y].push_back(len == 0 ? "id" + names[x]
                                                     : "p" + std::to_string(len) + ":" + names[x] + "->" + names[y]);
        }
    Matrix id = Matrix::from_ints(f, 1, 2, {1, 0});
    return category_from_rule(
        f, names, dims, {id, id},
        [f, lengths](std::size_t x, std::size_t y, std::size_t z, std::size_t i, std::size_t j) {
            const auto& out_basis = lengths[x * 2 + z];
            Matrix out(f, 1, out_basis.size());
            const std::size_t len = lengths[y * 2 + z][i] + lengths[x * 2 + y][j];
            for (std::size_t k = 0; k < out_basis.size(); ++k)
                if (out_basis[k] == len) out.set_int(0, k, 1);
            return out;
        },
        labels);
}

LinearFunctor s1_include_1(const CategoryPtr& s1c) {
    return inclusion_functor(full_subcategory(s1c, {0}), s1c, {0});
}

LinearFunctor s1_include_2(const CategoryPtr& s1c) {
    return inclusion_functor(full_subcategory(s1c, {1}), s1c, {1});
}

LinearFunctor s1_quotient(const CategoryPtr& s1c) {
    const Field& f = s1c->field();
    CategoryPtr q = s1_mod_alpha(f);
    std::vector<Matrix> hm = {one(f), Matrix(f, 0, 1), Matrix(f, 0, 0), one(f)};
    return LinearFunctor(s1c, q, {0, 1}, hm);
}

PresheafModule s1_simple(const CategoryPtr& s1c, std::size_t object) {
    const Field& f = s1c->field();
    std::vector<std::size_t> dims = {object == 0 ? 1u : 0u, object == 1 ? 1u : 0u};
    std::vector<std::vector<Matrix>> act(4);
    act[0] = {Matrix::identity(f, dims[0])};
    act[1] = {Matrix(f, dims[0], dims[1])};
    act[3] = {Matrix::identity(f, dims[1])};
    return PresheafModule(s1c, dims, act);
}

PresheafModule s1_line(const CategoryPtr& s1c) {
    const Field& f = s1c->field();
    std::vector<std::vector<Matrix>> act(4);
    act[0] = {one(f)};
    act[1] = {one(f)};
    act[3] = {one(f)};
    return PresheafModule(s1c, {1, 1}, act);
}

Sieve s1_alpha_sieve(const CategoryPtr& s1c) {
    return sieve_from_generators(s1c, 1, {{0, s1c->basis_vector(0, 1, 0)}});
}

CoverSystem s1_alpha_system(const CategoryPtr& s1c) {
    return {s1c, {{representable_sieve(s1c, 0)}, {s1_alpha_sieve(s1c)}}, Mode::up, false};
}

CoverSystem s1_supp1_system(const CategoryPtr& s1c) {
    return {s1c, {{zero_sieve(s1c, 0)}, {representable_sieve(s1c, 1)}}, Mode::up, false};
}

CoverSystem s1_raw_singleton(const CategoryPtr& s1c) {
    return {s1c, {{}, {s1_alpha_sieve(s1c)}}, Mode::raw, false};
}

CoverSystem s1_empty_at_1(const CategoryPtr& s1c) {
    return {s1c, {{}, {representable_sieve(s1c, 1)}}, Mode::up, false};
}

}  // namespace lsite::fixtures
