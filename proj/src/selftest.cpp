/**
 * @file selftest.cpp
 * @brief Property suites driven by seeded random instances.
 */
#include "ecc/selftest.hpp"

#include "ecc/afun.hpp"
#include "ecc/ehs_engine.hpp"
#include "ecc/errors.hpp"
#include "ecc/limits.hpp"
#include "ecc/riesz_space.hpp"
#include "ecc/roundtrip.hpp"
#include "ecc/sampling.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

namespace ecc {

bool SelftestReport::ok() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.failed == 0; });
}

std::uint64_t instance_seed(std::uint64_t seed, std::string_view suite, std::size_t fixture, std::size_t index) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const char c : suite) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001B3ULL;
    return mix64(mix64(mix64(seed) ^ h) ^ (static_cast<std::uint64_t>(fixture) << 32U) ^ index);
}

namespace {

/// Outcome of one instance: nothing when it passed, a message when it failed.
struct Verdict {
    bool vacuous = false;
    std::optional<std::string> failure;
};

Verdict pass() { return {}; }
Verdict vacuous() { return {true, std::nullopt}; }
Verdict fail(std::string what) { return {false, std::move(what)}; }

using Body = std::function<Verdict(Rng&)>;

SuiteResult run_suite(const SelftestOptions& o, const std::string& name, const std::string& fixture,
                      std::size_t fixture_pos, std::size_t count, const Body& body) {
    SuiteResult r;
    r.name = name;
    r.fixture = fixture;
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t s = instance_seed(o.seed, name, fixture_pos, i);
        Rng rng(s);
        Verdict v;
        try {
            v = body(rng);
        } catch (const std::exception& e) {
            v = fail(std::string("exception: ") + e.what());
        }
        if (v.failure) {
            ++r.failed;
            if (r.failing_seeds.size() < 8) r.failing_seeds.push_back(s);
            if (r.first_failure.empty()) r.first_failure = *v.failure;
        } else if (v.vacuous) {
            ++r.vacuous;
        } else {
            ++r.passed;
        }
    }
    return r;
}

/// x ≪ y iff x ≤ (1 - 2^-k)·min(y, 2^k) for some k.
bool way_below_by_approximation(const ExtVector& x, const ExtVector& y) {
    for (unsigned k = 0; k <= 128; ++k) {
        const Rational cap(Integer(1) << k);
        const Rational shrink = 1 - Rational(1, Integer(1) << k);
        bool below = true;
        for (std::size_t i = 0; i < x.size() && below; ++i) {
            const Rational yi = y[i].is_infinite() ? cap : std::min(y[i].value(), cap);
            below = ext_leq(x[i], ExtScalar(Rational(shrink * yi)));
        }
        if (below) return true;
    }
    return false;
}

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, std::int64_t max_entry) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rng.uniform(0, max_entry);
    return m;
}

IdemId random_idem(const ConePresentation& p, Rng& rng) {
    return static_cast<IdemId>(rng.uniform(0, static_cast<std::int64_t>(p.idem_count()) - 1));
}

ConeElement from_raw(const ConePresentation& p, const RawSum& s) { return canonicalize(p, s.base, s.terms); }

std::vector<GenId> set_union(std::vector<GenId> a, const std::vector<GenId>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

std::vector<GenId> set_intersection(const std::vector<GenId>& a, const std::vector<GenId>& b) {
    std::vector<GenId> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// Hereditary saturated vertex sets of the diagram restricted to levels 0..k.
std::size_t count_order_ideals(const BratteliDiagram& d, std::size_t k) {
    std::vector<std::size_t> first{0};
    for (std::size_t l = 0; l <= k; ++l) first.push_back(first.back() + d.levels[l].size());
    const std::size_t n = first.back();
    if (n > 20) throw PreconditionError("order-ideal enumeration limited to 20 vertices");
    std::size_t count = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        auto in = [&](std::size_t l, std::size_t v) { return ((mask >> (first[l] + v)) & 1U) != 0; };
        bool ideal = true;
        for (std::size_t l = 0; l < k && ideal; ++l)
            for (std::size_t v = 0; v < d.levels[l].size() && ideal; ++v) {
                bool all_in = true;
                for (std::size_t w = 0; w < d.levels[l + 1].size(); ++w)
                    if (sgn(d.matrices[l].at(w, v)) > 0) all_in = all_in && in(l + 1, w);
                ideal = in(l, v) == all_in;
            }
        count += ideal ? 1 : 0;
    }
    return count;
}

void fixture_suites(const SelftestOptions& o, const NamedFixture& fx, std::size_t pos, SelftestReport& rep) {
    const ConePresentation p(fx.spec);
    const std::size_t n = o.samples;
    auto add = [&](const std::string& name, std::size_t count, const Body& body) {
        rep.suites.push_back(run_suite(o, name, fx.name, pos, count, body));
    };

    add("canonical_form", n, [&](Rng& rng) {
        const RawSum r = random_raw_sum(p, rng);
        const ConeElement c = from_raw(p, r);
        check_element(p, c);
        if (canonicalize(p, c.support, c.coeffs) != c) return fail("canonicalize is not idempotent");
        ConeElement stepwise = idempotent_element(p, r.base);
        for (const auto& [x, a] : r.terms)
            if (sgn(a) > 0) stepwise = cone_add(p, stepwise, canonicalize(p, p.bot(), {{x, a}}));
        if (stepwise != c) return fail("canonical form differs from the term-by-term sum");
        return pass();
    });

    add("canonical_separation", n, [&](Rng& rng) {
        const ConeElement a = random_element(p, rng);
        const ConeElement b = rng.chance(1, 4) ? a : random_element(p, rng);
        bool separated = false;
        for (IdemId w = 0; w < p.idem_count() && !separated; ++w)
            for (int t = 0; t < 4 && !separated; ++t) {
                const RieszVector f = random_positive(p, rng, w);
                separated = pairing(p, a, f) != pairing(p, b, f);
            }
        if ((a == b) == separated) return fail(a == b ? "equal forms separated" : "distinct forms not separated");
        return pass();
    });

    add("cone_laws", n, [&](Rng& rng) {
        const ConeElement a = random_element(p, rng);
        const ConeElement b = random_element(p, rng);
        const ConeElement c = random_element(p, rng);
        const ConeElement zero = zero_element(p);
        if (cone_add(p, a, b) != cone_add(p, b, a)) return fail("addition is not commutative");
        if (cone_add(p, cone_add(p, a, b), c) != cone_add(p, a, cone_add(p, b, c)))
            return fail("addition is not associative");
        if (cone_add(p, a, zero) != a) return fail("zero is not neutral");
        if (!cone_leq(p, a, cone_add(p, a, b))) return fail("a is not below a + b");
        const Rational t = rng.dyadic(16, 2) + Rational(1, 4);
        if (scalar_mul(p, t, cone_add(p, a, b)) != cone_add(p, scalar_mul(p, t, a), scalar_mul(p, t, b)))
            return fail("scalar multiplication does not distribute");
        const LscFn f = random_lsc(p, rng);
        if (eval(p, f, cone_add(p, a, b)) != eval(p, f, a) + eval(p, f, b)) return fail("eval is not additive");
        const RieszVector v = random_positive(p, rng, random_idem(p, rng));
        if (pairing(p, cone_add(p, a, b), v) != pairing(p, a, v) + pairing(p, b, v))
            return fail("pairing is not additive");
        return pass();
    });

    add("element_lattice", n, [&](Rng& rng) {
        const ConeElement a = random_element(p, rng);
        const ConeElement b = random_element(p, rng);
        const LatticeOutcome m = element_meet(p, a, b);
        const LatticeOutcome j = element_join(p, a, b);
        if (!m.value) return fail("meet failed: " + m.diagnostic);
        if (!j.value) return fail("join failed: " + j.diagnostic);
        if (!cone_leq(p, *m.value, a) || !cone_leq(p, *m.value, b)) return fail("meet is not a lower bound");
        if (!cone_leq(p, a, *j.value) || !cone_leq(p, b, *j.value)) return fail("join is not an upper bound");
        const ConeElement ab = cone_add(p, a, b);
        const LatticeOutcome m2 = element_meet(p, a, ab);
        const LatticeOutcome j2 = element_join(p, a, ab);
        if (!m2.value || *m2.value != a) return fail("meet with an upper bound is not the element");
        if (!j2.value || *j2.value != ab) return fail("join with an upper bound is not the upper bound");
        return pass();
    });

    add("order_sets", 1, [&](Rng&) {
        for (IdemId a = 0; a < p.idem_count(); ++a)
            for (IdemId b = 0; b < p.idem_count(); ++b) {
                const std::string at = " at (" + p.idem_name(a) + ", " + p.idem_name(b) + ")";
                if (set_union(p.o_set(a), p.o_set(b)) != p.o_set(idem_meet(p, a, b)))
                    return fail("O union differs from O of the meet" + at);
                if (set_intersection(p.o_set(a), p.o_set(b)) != p.o_set(idem_join(p, a, b)))
                    return fail("O intersection differs from O of the join" + at);
                const auto oa = p.o_set(a);
                const auto ob = p.o_set(b);
                if (std::includes(ob.begin(), ob.end(), oa.begin(), oa.end()) != p.leq(b, a))
                    return fail("O inclusion does not match the order" + at);
                if (set_intersection(p.p_tilde_set(a), p.p_tilde_set(b)) != p.p_tilde_set(idem_meet(p, a, b)))
                    return fail("P-tilde intersection differs from P-tilde of the meet" + at);
                if (!p.leq(b, a)) {
                    const auto pa = p.p_set(a);
                    const bool witness = std::any_of(pa.begin(), pa.end(), [&](GenId x) { return p.below(x, b); });
                    if (!witness) return fail("P minus O is empty" + at);
                }
            }
        return pass();
    });

    add("function_meet", n, [&](Rng& rng) {
        const LscFn f = random_lsc(p, rng);
        const LscFn g = random_lsc(p, rng);
        const LscFn m = afun_meet(p, f, g).value;
        if (!afun_leq(p, m, f) || !afun_leq(p, m, g)) return fail("meet is not a lower bound");
        const ConeElement y = random_element(p, rng);
        if (eval(p, m, y) != inf_convolution(p, f, g, y)) return fail("meet differs from the inf-convolution");
        return pass();
    });

    add("riesz_interpolation", n, [&](Rng& rng) {
        const RieszVector h0 = random_vector(p, rng);
        auto shift = [&](bool up) {
            const RieszVector d = rng.chance(1, 4) ? RieszVector(p.gen_count()) : random_positive(p, rng, random_idem(p, rng));
            return up ? riesz_add(h0, d) : riesz_sub(h0, d);
        };
        const RieszVector f1 = shift(false);
        const RieszVector f2 = shift(false);
        const RieszVector g1 = shift(true);
        const RieszVector g2 = shift(true);
        const auto h = interpolate(p, f1, f2, g1, g2);
        if (!h) return fail("no interpolant found");
        if (!riesz_leq(p, f1, h->h) || !riesz_leq(p, f2, h->h) || !riesz_leq(p, h->h, g1) || !riesz_leq(p, h->h, g2))
            return fail("interpolant violates an inequality");
        return pass();
    });

    add("weak_cancellation", n, [&](Rng& rng) {
        const LscFn g = random_affine(p, rng);
        const LscFn f = rng.chance(1, 2) ? random_lhd_below(p, rng, g) : random_affine(p, rng);
        const LscFn h = rng.chance(1, 2) ? random_affine(p, rng) : random_lsc(p, rng);
        if (!afun_way_below(p, afun_add(p, f, h), afun_add(p, g, h))) return vacuous();
        if (!afun_way_below(p, f, g)) return fail("f + h << g + h but not f << g");
        return pass();
    });

    add("subtraction", n, [&](Rng& rng) {
        const LscFn g = random_affine(p, rng);
        const LscFn f = random_lhd_below(p, rng, g);
        const Subtraction s = afun_subtract(p, f, g);
        if (afun_add(p, f, s.h) != g) return fail("f + h differs from g");
        if (sgn(s.epsilon) <= 0 || s.epsilon > 1) return fail("epsilon outside (0,1]");
        if (!afun_leq(p, afun_scale(p, s.epsilon, g), s.h)) return fail("h is not above epsilon g");
        return pass();
    });

    add("riesz_decomposition", n, [&](Rng& rng) {
        const LscFn g1 = random_affine(p, rng);
        const LscFn g2 = random_affine(p, rng);
        const LscFn f = random_lhd_below(p, rng, afun_add(p, g1, g2));
        const RieszSplit s = riesz_decompose(p, f, g1, g2);
        if (afun_add(p, s.f1, s.f2) != f) return fail("f1 + f2 differs from f");
        if (!afun_lhd(p, s.f1, g1) || !afun_lhd(p, s.f2, g2)) return fail("a part is not below its bound");
        return pass();
    });

    add("way_below_functions", n, [&](Rng& rng) {
        const LscFn g = random_lsc(p, rng);
        const LscFn f = random_lhd_below(p, rng, g);
        for (unsigned k = 0; k < 6; ++k)
            if (!afun_leq(p, approximant(g, k), approximant(g, k + 1))) return fail("approximants are not increasing");
        const bool wb = afun_way_below(p, f, g);
        bool under = false;
        for (unsigned k = 0; k <= 64 && !under; ++k) under = afun_leq(p, f, approximant(g, k));
        if (wb != under) return fail("way-below disagrees with the approximating sequence");
        return pass();
    });

    add("triangle", std::max<std::size_t>(1, n / 20), [&](Rng& rng) {
        CuMorphism phi;
        IntVector x;
        IntVector y;
        bool found = false;
        for (int attempt = 0; attempt < 32 && !found; ++attempt) {
            const auto dim = static_cast<std::size_t>(rng.uniform(1, 4));
            phi.gens.clear();
            for (std::size_t i = 0; i < dim; ++i) phi.gens.push_back(random_affine(p, rng));
            x.assign(dim, 0);
            y.assign(dim, 0);
            for (std::size_t i = 0; i < dim; ++i) {
                x[i] = rng.uniform(0, 8);
                y[i] = rng.uniform(0, 8);
            }
            found = afun_way_below(p, morphism_apply(p, phi, RatVector(x.begin(), x.end())),
                                   morphism_apply(p, phi, RatVector(y.begin(), y.end())));
        }
        if (!found) return vacuous();
        const RatVector xr(x.begin(), x.end());
        const RatVector yr(y.begin(), y.end());
        const Factorization fact = core_triangle(p, phi, x, y);
        if (!fact.Q.is_integral() || !fact.Q.is_nonnegative()) return fail("Q is not a nonnegative integer matrix");
        if (!composes_to(p, fact, phi)) return fail("psi o Q differs from phi");
        if (!vec_leq(to_ext(ecc::apply(fact.Q, xr)), to_ext(ecc::apply(fact.Q, yr)))) return fail("Qx is not below Qy");
        for (std::size_t k = 1; k < fact.log.size(); ++k)
            if (!(fact.log[k].degree < fact.log[k - 1].degree)) return fail("degree did not decrease");
        return pass();
    });

    add("roundtrip", 1, [&](Rng& rng) {
        RoundtripOptions ro;
        ro.seed = rng.raw();
        const RoundtripReport r = roundtrip_check(p, ro);
        if (!r.ok()) return fail(r.mismatches.front());
        return pass();
    });
}

void global_suites(const SelftestOptions& o, SelftestReport& rep) {
    const std::size_t n = o.samples;
    const std::size_t pos = o.fixtures.size();
    auto add = [&](const std::string& name, std::size_t count, const Body& body) {
        rep.suites.push_back(run_suite(o, name, "-", pos, count, body));
    };

    add("way_below_vectors", 10 * n, [&](Rng& rng) {
        const auto dim = static_cast<std::size_t>(rng.uniform(1, 5));
        const ExtVector x = random_ext_vector(rng, dim);
        ExtVector y = random_ext_vector(rng, dim);
        if (rng.chance(1, 2))
            for (std::size_t i = 0; i < dim; ++i) y[i] += x[i];
        if (vec_way_below(x, y) != way_below_by_approximation(x, y))
            return fail("closed form disagrees with the approximating sequence");
        return pass();
    });

    add("matrix_action", n, [&](Rng& rng) {
        const auto rows = static_cast<std::size_t>(rng.uniform(1, 4));
        const auto cols = static_cast<std::size_t>(rng.uniform(1, 4));
        const Matrix m = random_matrix(rng, rows, cols, 3);
        const ExtVector x = random_ext_vector(rng, cols);
        const ExtVector y = vec_add(x, random_ext_vector(rng, cols));
        if (!vec_leq(mat_apply(m, x), mat_apply(m, y))) return fail("matrix action is not monotone");
        if (vec_way_below(x, y) && !vec_way_below(mat_apply(m, x), mat_apply(m, y)))
            return fail("matrix action does not preserve way-below");
        return pass();
    });

    add("dualize", n, [&](Rng& rng) {
        System s;
        s.direction = rng.chance(1, 2) ? Direction::inductive : Direction::projective;
        const auto stages = static_cast<std::size_t>(rng.uniform(1, 4));
        for (std::size_t k = 0; k < stages; ++k) {
            s.indices.push_back("s" + std::to_string(k));
            s.dims.push_back(static_cast<std::size_t>(rng.uniform(1, 3)));
        }
        for (std::size_t k = 0; k + 1 < stages; ++k) s.steps.push_back(random_matrix(rng, s.dims[k + 1], s.dims[k], 3));
        if (dualize(dualize(s)) != s) return fail("dualize is not an involution");
        return pass();
    });

    add("bratteli", 1, [&](Rng&) {
        const BratteliImport car = bratteli_import(fixture_car(), 6);
        for (std::size_t k = 0; k < car.cones.dims.size(); ++k)
            if (car.cones.dims[k] != 1) return fail("CAR stage cone is not one-dimensional");
        for (const auto& m : car.cones.steps)
            if (m != Matrix::from_rows({{2}}, 1)) return fail("CAR connecting map is not 2");
        const BratteliDiagram two = fixture_two_component();
        const BratteliImport imp = bratteli_import(two, 2);
        for (std::size_t k = 0; k < 2; ++k)
            if (imp.idempotent_counts[k] != Integer(count_order_ideals(two, k)))
                return fail("idempotent count differs from the order-ideal count at stage " + std::to_string(k));
        if (imp.idempotent_counts[1] != 4) return fail("two-component count at depth 2 is not 4");
        return pass();
    });
}

}  // namespace

SelftestReport run_selftest(const SelftestOptions& options) {
    SelftestReport rep;
    rep.seed = options.seed;
    rep.samples = options.samples;
    for (const auto& fx : options.fixtures) require_valid(ConePresentation(fx.spec));
    for (std::size_t i = 0; i < options.fixtures.size(); ++i) fixture_suites(options, options.fixtures[i], i, rep);
    global_suites(options, rep);
    return rep;
}

std::string format_report(const SelftestReport& report) {
    std::ostringstream os;
    os << "selftest seed=" << report.seed << " samples=" << report.samples << '\n';
    for (const auto& s : report.suites) {
        os << s.name << ' ' << s.fixture << " passed=" << s.passed << " failed=" << s.failed
           << " vacuous=" << s.vacuous << '\n';
        if (s.failed > 0) {
            os << "  first failure: " << s.first_failure << "\n  reproduce with seeds:";
            for (const auto seed : s.failing_seeds) os << ' ' << seed;
            os << '\n';
        }
    }
    os << (report.ok() ? "all suites passed" : "FAILURES present") << '\n';
    return os.str();
}

}  // namespace ecc
