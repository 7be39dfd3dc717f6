/**
 * @file test_riesz_space.cpp
 * @brief Support sets, positivity, interpolation, pairing and reconstruction.
 */
#include "ecc/errors.hpp"
#include "ecc/fixtures.hpp"
#include "ecc/riesz_space.hpp"
#include "ecc/sampling.hpp"

#include <doctest.h>

#include <algorithm>

using namespace ecc;

namespace {

RieszVector vec(const ConePresentation& p, const std::map<std::string, Rational>& values) {
    RieszVector f(p.gen_count());
    for (const auto& [g, a] : values) f[p.gen(g)] = a;
    return f;
}

std::vector<GenId> gens(const ConePresentation& p, std::initializer_list<const char*> names) {
    std::vector<GenId> out;
    for (const char* n : names) out.push_back(p.gen(n));
    std::sort(out.begin(), out.end());
    return out;
}

/// Positivity decided directly from the below and support tables.
std::optional<IdemId> positive_by_tables(const ConePresentation& p, const RieszVector& f) {
    for (IdemId w = 0; w < p.idem_count(); ++w) {
        bool ok = true;
        for (GenId x = 0; x < p.gen_count(); ++x) {
            const bool in_o = !p.below(x, w);
            if (!in_o && sgn(f[x]) != 0) ok = false;
            if (in_o && p.leq(p.support(x), w) && sgn(f[x]) <= 0) ok = false;
        }
        if (ok) return w;
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("support sets on the fixtures") {
    const ConePresentation e2(fixture_e2());
    const ConePresentation lex(fixture_elex());
    const SupportSets s = support_sets(e2, e2.idem("p1"));
    CHECK(s.o == gens(e2, {"e2"}));
    CHECK(s.p == gens(e2, {"e2"}));
    const SupportSets t = support_sets(lex, lex.idem("w"));
    CHECK(t.o == gens(lex, {"x2"}));
    CHECK(t.p == gens(lex, {"x2"}));
    for (const auto& fx : cone_fixtures()) {
        const ConePresentation p(fx.spec);
        CHECK(support_sets(p, p.top()).o.empty());
        CHECK(support_sets(p, p.top()).p.empty());
    }
}

TEST_CASE("positivity witnesses") {
    const ConePresentation lex(fixture_elex());
    CHECK(lex.idem_name(*is_positive(lex, vec(lex, {{"x1", 1}}))) == "bot");
    CHECK(*is_positive(lex, RieszVector(2)) == lex.top());
    CHECK_FALSE(is_positive(lex, vec(lex, {{"x1", -1}, {"x2", 1}})));
}

TEST_CASE("interpolation") {
    const ConePresentation e2(fixture_e2());
    const RieszVector f1 = vec(e2, {{"e1", 1}, {"e2", 1}});
    const RieszVector f2 = vec(e2, {{"e1", 0}, {"e2", 2}});
    const RieszVector g1 = vec(e2, {{"e1", 2}, {"e2", 3}});
    const RieszVector g2 = vec(e2, {{"e1", 3}, {"e2", 2}});
    const auto h = interpolate(e2, f1, f2, g1, g2);
    REQUIRE(h);
    for (const auto* lo : {&f1, &f2})
        for (const auto* hi : {&g1, &g2}) {
            CHECK(riesz_leq(e2, *lo, h->h));
            CHECK(riesz_leq(e2, h->h, *hi));
        }
    CHECK(interpolate(e2, f1, f1, f1, f1)->h == f1);
    CHECK_THROWS_AS(interpolate(e2, g1, f2, f1, g2), PreconditionError);
}

TEST_CASE("pairing and reconstruction") {
    const ConePresentation lex(fixture_elex());
    const ConePresentation e2(fixture_e2());
    const ConeElement y = canonicalize(lex, lex.idem("w"), {{lex.gen("x2"), 3}});
    CHECK(pairing(lex, y, vec(lex, {{"x2", 1}})) == ExtScalar(3));
    CHECK(pairing(lex, idempotent_element(lex, lex.top()), vec(lex, {{"x2", 1}})).is_infinite());
    CHECK(pairing(lex, zero_element(lex), vec(lex, {{"x1", 2}, {"x2", 1}})) == ExtScalar(0));
    CHECK_THROWS_AS(pairing(lex, y, vec(lex, {{"x1", -1}, {"x2", 1}})), PreconditionError);
    CHECK(reconstruct(lex, lex.idem("w"), {{lex.gen("x2"), 5}}) == canonicalize(lex, lex.idem("w"), {{lex.gen("x2"), 5}}));
    CHECK(reconstruct(lex, lex.bot(), {}) == zero_element(lex));
    CHECK(reconstruct(e2, e2.bot(), {{e2.gen("e1"), 1}, {e2.gen("e2"), 2}}) ==
          canonicalize(e2, e2.bot(), {{e2.gen("e1"), 1}, {e2.gen("e2"), 2}}));
}

TEST_CASE("random properties of the ordered vector space") {
    for (const auto& fx : cone_fixtures()) {
        CAPTURE(fx.name);
        const ConePresentation p(fx.spec);
        Rng rng(21);
        for (int i = 0; i < 300; ++i) {
            const RieszVector v = random_vector(p, rng);
            REQUIRE(is_positive(p, v) == positive_by_tables(p, v));
            const IdemId w1 = static_cast<IdemId>(rng.uniform(0, static_cast<std::int64_t>(p.idem_count()) - 1));
            const IdemId w2 = static_cast<IdemId>(rng.uniform(0, static_cast<std::int64_t>(p.idem_count()) - 1));
            const RieszVector f = random_positive(p, rng, w1);
            const RieszVector g = random_positive(p, rng, w2);
            REQUIRE(is_positive(p, f) == w1);
            REQUIRE(is_positive(p, riesz_add(f, g)) == idem_meet(p, w1, w2));
            RieszVector neg(f.size());
            for (std::size_t k = 0; k < f.size(); ++k) neg[k] = -f[k];
            if (w1 != p.top()) REQUIRE_FALSE(is_positive(p, neg));
            const ConeElement y = random_element(p, rng);
            const ConeElement z = random_element(p, rng);
            REQUIRE(pairing(p, cone_add(p, y, z), f) == pairing(p, y, f) + pairing(p, z, f));
            REQUIRE(pairing(p, y, riesz_add(f, g)) == pairing(p, y, f) + pairing(p, y, g));
            Coeffs lambda;
            for (GenId x : p.p_set(y.support)) {
                RieszVector indicator(p.gen_count());
                indicator[x] = 1;
                if (!is_positive(p, indicator)) continue;
                const ExtScalar v2 = pairing(p, y, indicator);
                if (v2.is_finite() && sgn(v2.value()) > 0) lambda[x] = v2.value();
            }
            REQUIRE(reconstruct(p, y.support, lambda) == y);
        }
    }
}
