/**
 * @file test_limits.cpp
 * @brief Matrix actions, systems, duality, threads and Bratteli imports.
 */
#include "ecc/errors.hpp"
#include "ecc/fixtures.hpp"
#include "ecc/limits.hpp"
#include "ecc/sampling.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace ecc;

namespace {

const ExtScalar inf = ExtScalar::infinity();

Matrix mat(const std::vector<RatVector>& rows) { return Matrix::from_rows(rows, rows.front().size()); }

Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rng.dyadic(6, 1);
    return m;
}

System chain(std::vector<Matrix> steps, std::vector<std::size_t> dims) {
    System s;
    for (std::size_t k = 0; k < dims.size(); ++k) s.indices.push_back(std::to_string(k));
    s.dims = std::move(dims);
    s.steps = std::move(steps);
    return s;
}

}  // namespace

TEST_CASE("matrix action with the zero-times-infinity rule") {
    CHECK(mat_apply(mat({{0}}), {inf}) == ExtVector{0});
    CHECK(mat_apply(Matrix::identity(3), {1, inf, 0}) == ExtVector{1, inf, 0});
    CHECK(mat_apply(mat({{1, 2}}), {1, inf}) == ExtVector{inf});
    CHECK_THROWS_AS(mat_apply(mat({{1, 2}}), {1}), PreconditionError);
}

TEST_CASE("matrix action is monotone, additive and preserves way-below") {
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const auto r = static_cast<std::size_t>(rng.uniform(1, 4));
        const auto c = static_cast<std::size_t>(rng.uniform(1, 4));
        const Matrix m = random_matrix(rng, r, c);
        const ExtVector x = random_ext_vector(rng, c);
        const ExtVector y = vec_add(x, random_ext_vector(rng, c));
        REQUIRE(vec_leq(mat_apply(m, x), mat_apply(m, y)));
        REQUIRE(mat_apply(m, vec_add(x, y)) == vec_add(mat_apply(m, x), mat_apply(m, y)));
        if (vec_way_below(x, y)) REQUIRE(vec_way_below(mat_apply(m, x), mat_apply(m, y)));
    }
}

TEST_CASE("matrix action commutes with increasing suprema") {
    const Matrix m = mat({{1, 0}, {2, 3}});
    ExtVector last;
    for (unsigned n = 1; n <= 40; ++n) {
        const ExtVector x{ExtScalar(Rational(n)), ExtScalar(Rational(1 - Rational(1, Integer(1) << n)))};
        const ExtVector image = mat_apply(m, x);
        if (!last.empty()) REQUIRE(vec_leq(last, image));
        last = image;
    }
    CHECK(mat_apply(m, {inf, 1}) == ExtVector{inf, inf});
}

TEST_CASE("dualize") {
    const System s = chain({mat({{1, 2}, {3, 4}})}, {2, 2});
    const System d = dualize(s);
    CHECK(d.direction == Direction::projective);
    CHECK(d.steps.front() == mat({{1, 3}, {2, 4}}));
    CHECK(dualize(d) == s);
    const System e1 = chain({mat({{2}}), mat({{2}})}, {1, 1, 1});
    CHECK(dualize(e1).steps == e1.steps);
    Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        const Matrix a = random_matrix(rng, 2, 3);
        const Matrix b = random_matrix(rng, 3, 2);
        REQUIRE((a * b).transpose() == b.transpose() * a.transpose());
    }
}

TEST_CASE("system coherence") {
    Rng rng(6);
    const System s = chain({random_matrix(rng, 3, 2), random_matrix(rng, 2, 3), random_matrix(rng, 1, 2)}, {2, 3, 2, 1});
    check_system(s);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j)
            for (std::size_t k = j; k < 4; ++k) REQUIRE(s.connect(i, k) == s.connect(j, k) * s.connect(i, j));
    CHECK_THROWS_AS(check_system(chain({random_matrix(rng, 2, 2)}, {3, 2})), PreconditionError);
}

TEST_CASE("functionals on powers of the half-line") {
    CHECK(functional_eval({1, inf}, {2, 0}) == ExtScalar(2));
    CHECK(functional_eval({0, 0}, {inf, 5}) == ExtScalar(0));
    CHECK(functional_eval({1, 1}, {inf, 1}).is_infinite());
    CHECK(functional_iso({1, inf}, 2) == ExtVector{1, inf});
}

TEST_CASE("threads") {
    const System p = dualize(chain({mat({{2}})}, {1, 1}));
    CHECK(thread_eval(p, {{"0", {0}}, {"1", {0}}}));
    CHECK(thread_eval(p, {{"1", {1}}, {"0", {2}}}));
    CHECK_FALSE(thread_eval(p, {{"1", {1}}, {"0", {3}}}));
}

TEST_CASE("Bratteli imports") {
    const BratteliImport car = bratteli_import(fixture_car(), 3);
    CHECK(car.cones.dims == std::vector<std::size_t>{1, 1, 1});
    for (const auto& m : car.cones.steps) CHECK(m == mat({{2}}));
    const BratteliImport car6 = bratteli_import(fixture_car(), 6);
    CHECK(car6.cones.steps.size() == 5);
    const BratteliDiagram two = fixture_two_component();
    const BratteliImport imp = bratteli_import(two, 2);
    CHECK(imp.idempotent_counts.back() == 4);
    for (std::size_t k = 0; k < 2; ++k) CHECK(imp.idempotent_counts[k] == Integer(oracle::order_ideals(two, k)));
    const BratteliImport none = bratteli_import(two, 0);
    CHECK(none.groups.dims.empty());
    CHECK(none.cones.dims.empty());
    CHECK_THROWS_AS(bratteli_import(two, 9), PreconditionError);
    BratteliDiagram bad = two;
    bad.matrices.pop_back();
    CHECK_THROWS_AS(check_diagram(bad), ValidationError);
}

TEST_CASE("idempotent counts match order ideals on a branching diagram") {
    BratteliDiagram d;
    d.levels = {{1, 1}, {1, 1, 1}, {1, 2}};
    d.matrices = {mat({{1, 0}, {1, 1}, {0, 1}}), mat({{1, 1, 0}, {0, 1, 1}})};
    const BratteliImport imp = bratteli_import(d, 3);
    for (std::size_t k = 0; k < 3; ++k) CHECK(imp.idempotent_counts[k] == Integer(oracle::order_ideals(d, k)));
}
