/**
 * @file test_linprog.cpp
 * @brief Exact simplex against Fourier–Motzkin projection.
 */
#include "ecc/linprog.hpp"
#include "ecc/random.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace ecc;

TEST_CASE("textbook program") {
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {3, 2};
    lp.add({{0, 1}, {1, 1}}, Relation::less_equal, 4);
    lp.add({{0, 1}, {1, 3}}, Relation::less_equal, 6);
    lp.add({{0, 1}}, Relation::less_equal, 3);
    const LpSolution s = maximize(lp);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.value == 11);
    CHECK(satisfies(lp, s.x));
}

TEST_CASE("infeasible and unbounded programs") {
    LinearProgram bad;
    bad.num_vars = 1;
    bad.objective = {1};
    bad.add({{0, 1}}, Relation::greater_equal, 2);
    bad.add({{0, 1}}, Relation::less_equal, 1);
    CHECK(maximize(bad).status == LpStatus::infeasible);

    LinearProgram open;
    open.num_vars = 2;
    open.objective = {1, 0};
    open.add({{0, 1}, {1, -1}}, Relation::equal, Rational(1, 2));
    CHECK(maximize(open).status == LpStatus::unbounded);
}

TEST_CASE("simplex agrees with Fourier-Motzkin on random programs") {
    Rng rng(31);
    int optimal = 0;
    for (int t = 0; t < 400; ++t) {
        LinearProgram lp;
        lp.num_vars = static_cast<std::size_t>(rng.uniform(1, 3));
        for (std::size_t j = 0; j < lp.num_vars; ++j) lp.objective.push_back(rng.uniform(-3, 3));
        const auto m = rng.uniform(1, 4);
        for (int i = 0; i < m; ++i) {
            std::vector<std::pair<std::size_t, Rational>> terms;
            for (std::size_t j = 0; j < lp.num_vars; ++j) { Rational q(rng.uniform(-3, 3), rng.uniform(1, 2)); q.canonicalize(); terms.emplace_back(j, q); }
            const auto r = rng.uniform(0, 2);
            const Relation rel = r == 0 ? Relation::less_equal : r == 1 ? Relation::greater_equal : Relation::equal;
            lp.add(terms, rel, rng.uniform(-4, 6));
        }
        const LpSolution s = maximize(lp);
        const oracle::FmResult fm = oracle::fm_maximize(lp);
        REQUIRE(s.status == fm.status);
        if (s.status == LpStatus::optimal) {
            ++optimal;
            REQUIRE(s.value == fm.value);
            REQUIRE(satisfies(lp, s.x));
        }
    }
    CHECK(optimal > 50);
}
