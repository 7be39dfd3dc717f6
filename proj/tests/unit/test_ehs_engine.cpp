/**
 * @file test_ehs_engine.cpp
 * @brief Degrees, the core factorization, the pair wrapper and inductive systems.
 */
#include "ecc/ehs_engine.hpp"
#include "ecc/errors.hpp"
#include "ecc/fixtures.hpp"
#include "ecc/sampling.hpp"

#include <doctest.h>

using namespace ecc;

namespace {

LscFn fn(const ConePresentation& p, const std::string& v, const std::map<std::string, ExtScalar>& values) {
    LscFn f;
    f.support = p.idem(v);
    for (const auto& [g, a] : values) f.values[p.gen(g)] = a;
    return f;
}

RatVector rat(const IntVector& v) { return {v.begin(), v.end()}; }

/// Σ_r Q[r][i]·ψ_r equals φ_i at every generator and idempotent element.
bool factors(const ConePresentation& p, const Factorization& f, const CuMorphism& phi) {
    for (std::size_t i = 0; i < phi.gens.size(); ++i) {
        RatVector col(f.Q.rows());
        for (std::size_t r = 0; r < f.Q.rows(); ++r) col[r] = f.Q.at(r, i);
        const LscFn image = morphism_apply(p, f.psi, col);
        for (GenId x = 0; x < p.gen_count(); ++x)
            if (eval(p, image, generator_element(p, x)) != eval(p, phi.gens[i], generator_element(p, x))) return false;
        for (IdemId w = 0; w < p.idem_count(); ++w)
            if (eval(p, image, idempotent_element(p, w)) != eval(p, phi.gens[i], idempotent_element(p, w)))
                return false;
    }
    return true;
}

bool strictly_decreasing(const std::vector<DescentStep>& log, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin + 1; k < end; ++k) {
        const Degree& a = log[k - 1].degree;
        const Degree& b = log[k].degree;
        const bool less = b.M < a.M || (b.M == a.M && (b.n1 < a.n1 || (b.n1 == a.n1 && (b.n2 < a.n2 ||
                                                                                      (b.n2 == a.n2 && b.n < a.n)))));
        if (!less) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("degree") {
    const Degree d = degree({1, 0}, {0, 2});
    CHECK(d.M == 2);
    CHECK(d.n1 == 0);
    CHECK(d.n2 == 1);
    CHECK(d.n == 2);
    const Degree e = degree({4, 4, 4}, {4, 4, 4});
    CHECK(e.M == 0);
    CHECK(e.n1 == 3);
    CHECK(e.n2 == 3);
    const Degree f = degree({3, 0, 1}, {0, 3, 1});
    CHECK((f.M == 3 && f.n1 == 1 && f.n2 == 1 && f.n == 3));
    CHECK_THROWS_AS(degree({1}, {1, 2}), PreconditionError);
    CHECK(degree({0, 2}, {2, 0}) < degree({0, 3}, {0, 0}));
}

TEST_CASE("core factorization on the worked examples") {
    const ConePresentation e1(fixture_e1());
    const LscFn id = fn(e1, "bot", {{"u", 1}});
    const CuMorphism phi{{id, id}};
    SUBCASE("already ordered pair keeps the identity") {
        const Factorization f = core_triangle(e1, phi, {1, 0}, {1, 1});
        CHECK(f.Q == Matrix::identity(2));
        CHECK(f.psi == phi);
    }
    SUBCASE("x = (1,0), y = (0,2)") {
        const Factorization f = core_triangle(e1, phi, {1, 0}, {0, 2});
        CHECK(f.Q.is_integral());
        CHECK(factors(e1, f, phi));
        CHECK(vec_leq(to_ext(ecc::apply(f.Q, {1, 0})), to_ext(ecc::apply(f.Q, {0, 2}))));
        CHECK(strictly_decreasing(f.log, 0, f.log.size()));
    }
    SUBCASE("compact image forces the zero map") {
        const CuMorphism zero{{zero_function(e1)}};
        const Factorization f = core_triangle(e1, zero, {2}, {1});
        CHECK(factors(e1, f, zero));
        CHECK(vec_leq(to_ext(ecc::apply(f.Q, {2})), to_ext(ecc::apply(f.Q, {1}))));
    }
    SUBCASE("precondition") {
        CHECK_THROWS_AS(core_triangle(e1, phi, {0, 2}, {1, 0}), PreconditionError);
    }
}

TEST_CASE("pair wrapper") {
    const ConePresentation e1(fixture_e1());
    const LscFn id = fn(e1, "bot", {{"u", 1}});
    const CuMorphism phi{{id, id}};
    const Factorization none = triangle(e1, phi, {{1, 1}});
    CHECK(none.Q == Matrix::identity(2));
    const Factorization f = triangle(e1, phi, {{1, 0}, {0, 2}});
    CHECK(factors(e1, f, phi));
    CHECK(vec_way_below(to_ext(ecc::apply(f.Q, {1, 0})), to_ext(ecc::apply(f.Q, {0, 2}))));
    const std::vector<RatVector> chain{{1, 0}, {0, 2}, {2, 1}};
    const Factorization g = triangle(e1, phi, chain);
    CHECK(factors(e1, g, phi));
    for (const auto& a : chain)
        for (const auto& b : chain)
            if (afun_way_below(e1, morphism_apply(e1, phi, a), morphism_apply(e1, phi, b)))
                CHECK(vec_way_below(to_ext(ecc::apply(g.Q, a)), to_ext(ecc::apply(g.Q, b))));
    for (std::size_t s = 0; s < g.segments.size(); ++s)
        CHECK(strictly_decreasing(g.log, g.segments[s], s + 1 < g.segments.size() ? g.segments[s + 1] : g.log.size()));
}

TEST_CASE("random core factorizations") {
    for (const auto& fx : cone_fixtures()) {
        CAPTURE(fx.name);
        const ConePresentation p(fx.spec);
        Rng rng(44);
        int done = 0;
        while (done < 25) {
            const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
            CuMorphism phi;
            for (std::size_t i = 0; i < n; ++i) phi.gens.push_back(random_affine(p, rng));
            IntVector x(n);
            IntVector y(n);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = rng.uniform(0, 8);
                y[i] = rng.uniform(0, 8);
            }
            if (!afun_way_below(p, morphism_apply(p, phi, rat(x)), morphism_apply(p, phi, rat(y)))) continue;
            ++done;
            const Factorization f = core_triangle(p, phi, x, y);
            REQUIRE(f.Q.is_integral());
            REQUIRE(f.Q.is_nonnegative());
            REQUIRE(factors(p, f, phi));
            REQUIRE(vec_leq(to_ext(ecc::apply(f.Q, rat(x))), to_ext(ecc::apply(f.Q, rat(y)))));
            REQUIRE(strictly_decreasing(f.log, 0, f.log.size()));
            for (const auto& c : f.cancellations) {
                REQUIRE(afun_way_below(p, afun_add(p, c.f, c.h), afun_add(p, c.g, c.h_prime)));
                REQUIRE(afun_way_below(p, c.f, c.g));
            }
        }
    }
}

TEST_CASE("probe grids") {
    CHECK(probe_set(1, 2, 100).size() == 9);
    CHECK(probe_set(1, 3, 4).size() == 4);
    CHECK(probe_set(2, 1, 100) == std::vector<RatVector>{{0}, {Rational(1, 2)}, {1}, {Rational(3, 2)}, {2}});
}

TEST_CASE("inductive systems") {
    const ConePresentation lex(fixture_elex());
    const LscFn a = fn(lex, "bot", {{"x1", 1}});
    const LscFn b = fn(lex, "w", {{"x2", 1}});
    const CuSystem one = build_inductive_system(lex, {a}, 0);
    CHECK(one.psi.size() == 1);
    CHECK(one.psi[0].gens == std::vector<LscFn>{a});
    CHECK(one.system.steps.empty());
    const CuSystem s = build_inductive_system(lex, {a, b}, 2);
    CHECK(s.psi.size() == 3);
    CHECK(system_commutes(lex, s));
    for (const auto& m : s.system.steps) {
        CHECK(m.is_integral());
        CHECK(m.is_nonnegative());
    }
    CHECK_THROWS_AS(build_inductive_system(lex, {}, 1), PreconditionError);
}
