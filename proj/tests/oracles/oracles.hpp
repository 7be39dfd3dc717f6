/**
 * @file oracles.hpp
 * @brief Test-side reference implementations, written without the library's algorithms.
 */
#pragma once

#include "ecc/afun.hpp"
#include "ecc/fg_cone.hpp"
#include "ecc/limits.hpp"
#include "ecc/linprog.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

using ecc::ExtScalar;
using ecc::ExtVector;
using ecc::Integer;
using ecc::Rational;
using ecc::RatVector;

// ---------------------------------------------------------------- way-below

/// x ≪ y iff x ≤ y_k for some member y_k = (1 - 2^-k)·min(y, 2^k) of the canonical sequence.
inline bool way_below_by_sequence(const ExtVector& x, const ExtVector& y, unsigned max_k = 160) {
    for (unsigned k = 0; k <= max_k; ++k) {
        const Rational cap(Integer(1) << k);
        const Rational shrink = 1 - Rational(1, Integer(1) << k);
        bool below = true;
        for (std::size_t i = 0; i < x.size() && below; ++i) {
            const Rational yk = shrink * (y[i].is_infinite() ? cap : std::min(y[i].value(), cap));
            below = x[i].is_finite() && x[i].value() <= yk;
        }
        if (below) return true;
    }
    return false;
}

// ---------------------------------------------------------------- Fourier–Motzkin

/// a·x ≤ b over rationals.
struct Inequality {
    RatVector a;
    Rational b;
};

/// Eliminates variable k from a system of inequalities.
inline std::vector<Inequality> eliminate(const std::vector<Inequality>& sys, std::size_t k) {
    std::vector<Inequality> pos;
    std::vector<Inequality> neg;
    std::vector<Inequality> out;
    for (const auto& q : sys) {
        const int s = sgn(q.a[k]);
        (s > 0 ? pos : s < 0 ? neg : out).push_back(q);
    }
    for (const auto& p : pos)
        for (const auto& n : neg) {
            const Rational lp = -n.a[k];
            const Rational ln = p.a[k];
            Inequality c{RatVector(p.a.size()), lp * p.b + ln * n.b};
            for (std::size_t j = 0; j < p.a.size(); ++j) c.a[j] = lp * p.a[j] + ln * n.a[j];
            c.a[k] = 0;
            out.push_back(std::move(c));
        }
    return out;
}

struct FmResult {
    ecc::LpStatus status = ecc::LpStatus::infeasible;
    Rational value;
};

/// Exact maximum of the program by projecting onto t = objective·x.
inline FmResult fm_maximize(const ecc::LinearProgram& lp) {
    const std::size_t n = lp.num_vars;
    std::vector<Inequality> sys;
    auto push = [&](RatVector a, const Rational& b) { sys.push_back({std::move(a), b}); };
    for (const auto& c : lp.constraints) {
        RatVector a(n + 1);
        for (std::size_t j = 0; j < n; ++j) a[j] = c.coeffs[j];
        RatVector neg_a(n + 1);
        for (std::size_t j = 0; j <= n; ++j) neg_a[j] = -a[j];
        if (c.rel != ecc::Relation::greater_equal) push(a, c.rhs);
        if (c.rel != ecc::Relation::less_equal) push(neg_a, -c.rhs);
    }
    for (std::size_t j = 0; j < n; ++j) {
        RatVector a(n + 1);
        a[j] = -1;
        push(a, 0);
    }
    RatVector up(n + 1);
    RatVector down(n + 1);
    for (std::size_t j = 0; j < n; ++j) {
        up[j] = -lp.objective[j];
        down[j] = lp.objective[j];
    }
    up[n] = 1;
    down[n] = -1;
    push(up, 0);
    push(down, 0);
    for (std::size_t k = 0; k < n; ++k) sys = eliminate(sys, k);
    std::optional<Rational> upper;
    std::optional<Rational> lower;
    for (const auto& q : sys) {
        const int s = sgn(q.a[n]);
        if (s == 0) {
            if (sgn(q.b) < 0) return {};
        } else {
            const Rational bound = q.b / q.a[n];
            if (s > 0) upper = upper ? std::min(*upper, bound) : bound;
            if (s < 0) lower = lower ? std::max(*lower, bound) : bound;
        }
    }
    if (upper && lower && *lower > *upper) return {};
    if (!upper) return {ecc::LpStatus::unbounded, 0};
    return {ecc::LpStatus::optimal, *upper};
}

// ---------------------------------------------------------------- Bratteli

/// Hereditary saturated vertex sets of the diagram restricted to levels 0..k.
inline std::size_t order_ideals(const ecc::BratteliDiagram& d, std::size_t k) {
    std::vector<std::pair<std::size_t, std::size_t>> verts;
    for (std::size_t l = 0; l <= k; ++l)
        for (std::size_t v = 0; v < d.levels[l].size(); ++v) verts.emplace_back(l, v);
    auto index = [&](std::size_t l, std::size_t v) {
        return static_cast<std::size_t>(std::find(verts.begin(), verts.end(), std::make_pair(l, v)) - verts.begin());
    };
    std::size_t count = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << verts.size()); ++mask) {
        bool ok = true;
        for (const auto& [l, v] : verts) {
            if (l == k) continue;
            bool hereditary = true;
            bool saturated = true;
            const bool has = (mask >> index(l, v)) & 1U;
            for (std::size_t w = 0; w < d.levels[l + 1].size(); ++w) {
                if (sgn(d.matrices[l].at(w, v)) == 0) continue;
                const bool succ = (mask >> index(l + 1, w)) & 1U;
                if (has && !succ) hereditary = false;
                if (!succ) saturated = false;
            }
            if (!hereditary || (saturated && !has)) ok = false;
        }
        count += ok ? 1 : 0;
    }
    return count;
}

// ---------------------------------------------------------------- fixture models

inline ExtScalar inf() { return ExtScalar::infinity(); }

/// E2 as [0,∞]² with coordinatewise arithmetic.
struct E2Point {
    ExtScalar a;
    ExtScalar b;
    friend bool operator==(const E2Point&, const E2Point&) = default;
};

inline E2Point e2_point(const ecc::ConePresentation& p, const ecc::ConeElement& y) {
    const std::string& w = p.idem_name(y.support);
    auto coeff = [&](const char* g) {
        const auto it = y.coeffs.find(p.gen(g));
        return it == y.coeffs.end() ? ExtScalar(0) : ExtScalar(it->second);
    };
    E2Point pt{coeff("e1"), coeff("e2")};
    if (w == "p1" || w == "top") pt.a = inf();
    if (w == "p2" || w == "top") pt.b = inf();
    return pt;
}

/// f(a,b) = s1·a + s2·b where the slope on a coordinate absorbed by the support is 0.
struct E2Fn {
    ExtScalar s1;
    ExtScalar s2;
};

inline E2Fn e2_fn(const ecc::ConePresentation& p, const ecc::LscFn& f) {
    const std::string& v = p.idem_name(f.support);
    auto value = [&](const char* g) {
        const auto it = f.values.find(p.gen(g));
        return it == f.values.end() ? ExtScalar(0) : it->second;
    };
    E2Fn m{value("e1"), value("e2")};
    if (v == "p1" || v == "top") m.s1 = 0;
    if (v == "p2" || v == "top") m.s2 = 0;
    return m;
}

inline ExtScalar e2_eval(const E2Fn& f, const E2Point& y) { return f.s1 * y.a + f.s2 * y.b; }

inline bool e2_leq(const E2Point& x, const E2Point& y) { return ecc::ext_leq(x.a, y.a) && ecc::ext_leq(x.b, y.b); }

/// Elex as the additive maps on the positive cone of Z² ordered lexicographically:
/// λ_t(a,b) = t·a, μ_s(a,b) = ∞·a + s·b, and the top map.
struct ElexPoint {
    enum Kind { lambda, mu, top } kind = lambda;
    Rational t;
    friend bool operator==(const ElexPoint&, const ElexPoint&) = default;
};

inline ElexPoint elex_point(const ecc::ConePresentation& p, const ecc::ConeElement& y) {
    const std::string& w = p.idem_name(y.support);
    if (w == "top") return {ElexPoint::top, 0};
    if (w == "w") {
        const auto it = y.coeffs.find(p.gen("x2"));
        return {ElexPoint::mu, it == y.coeffs.end() ? Rational(0) : it->second};
    }
    const auto it = y.coeffs.find(p.gen("x1"));
    return {ElexPoint::lambda, it == y.coeffs.end() ? Rational(0) : it->second};
}

/// Value at the positive element (a,b) of Z²_lex.
inline ExtScalar elex_apply(const ElexPoint& y, const Integer& a, const Integer& b) {
    switch (y.kind) {
    case ElexPoint::lambda:
        return ExtScalar(Rational(y.t * a));
    case ElexPoint::mu:
        return sgn(a) > 0 ? inf() : ExtScalar(Rational(y.t * b));
    case ElexPoint::top:
        return (sgn(a) > 0 || sgn(b) > 0) ? inf() : ExtScalar(0);
    }
    return 0;
}

inline ElexPoint elex_add(const ElexPoint& x, const ElexPoint& y) {
    if (x.kind == ElexPoint::top || y.kind == ElexPoint::top) return {ElexPoint::top, 0};
    if (x.kind == ElexPoint::mu && y.kind == ElexPoint::mu) return {ElexPoint::mu, x.t + y.t};
    if (x.kind == ElexPoint::mu) return x;
    if (y.kind == ElexPoint::mu) return y;
    return {ElexPoint::lambda, x.t + y.t};
}

/// Pointwise comparison on the positive elements (1,b) and (0,1), which decides the order.
inline bool elex_leq(const ElexPoint& x, const ElexPoint& y) {
    for (int b = -4; b <= 4; ++b)
        if (!ecc::ext_leq(elex_apply(x, 1, b), elex_apply(y, 1, b))) return false;
    return ecc::ext_leq(elex_apply(x, 0, 1), elex_apply(y, 0, 1));
}
/// Functions on Elex: f(λ_t) = α·t and f(μ_s) = β·s, or ∞ on every μ when the support is bot;
/// Functions on Elex: f(λ_t) = α·t and f(μ_s) = β·s with α = ∞ coding f = ∞ on every μ,
/// f(top) = ∞ unless f vanishes identically.
struct ElexFn {
    ExtScalar alpha;  ///< slope on the lambda ray
    ExtScalar beta;   ///< slope on the mu ray
    bool zero = false;
    bool mu_infinite = false;  ///< support bot: ∞ on every mu, including mu_0
};

inline ElexFn elex_fn(const ecc::ConePresentation& p, const ecc::LscFn& f) {
    const std::string& v = p.idem_name(f.support);
    if (v == "top") return {0, 0, true};
    if (v == "w") return {0, f.values.at(p.gen("x2")), false};
    return {f.values.at(p.gen("x1")), inf(), false, true};
}

inline ExtScalar elex_eval(const ElexFn& f, const ElexPoint& y) {
    if (f.zero) return 0;
    switch (y.kind) {
    case ElexPoint::lambda:
        return f.alpha * ExtScalar(y.t);
    case ElexPoint::mu:
        return f.mu_infinite ? inf() : f.beta * ExtScalar(y.t);
    case ElexPoint::top:
        return inf();
    }
    return 0;
}

/// Finite grid points k/n·t for k = 0..n.
inline std::vector<Rational> grid(const Rational& t, int n) {
    std::vector<Rational> out;
    for (int k = 0; k <= n; ++k) { Rational q(k, n); q.canonicalize(); out.push_back(t * q); }
    return out;
}

/// inf over grid decompositions y = y1 + y2 of f(y1) + g(y2) on E2.
inline ExtScalar e2_inf_convolution(const E2Fn& f, const E2Fn& g, const E2Point& y, int n = 8) {
    auto splits = [&](const ExtScalar& c) {
        std::vector<std::pair<ExtScalar, ExtScalar>> out;
        if (c.is_infinite()) {
            for (int k = 0; k <= n; ++k) {
                out.emplace_back(inf(), ExtScalar(Rational(k)));
                out.emplace_back(ExtScalar(Rational(k)), inf());
            }
            out.emplace_back(inf(), inf());
        } else {
            for (const auto& q : grid(c.value(), n)) out.emplace_back(ExtScalar(q), ExtScalar(Rational(c.value() - q)));
        }
        return out;
    };
    std::optional<ExtScalar> best;
    for (const auto& [a1, a2] : splits(y.a))
        for (const auto& [b1, b2] : splits(y.b)) {
            const ExtScalar v = e2_eval(f, {a1, b1}) + e2_eval(g, {a2, b2});
            if (!best || v < *best) best = v;
        }
    return *best;
}

/// inf over grid decompositions y = y1 + y2 of f(y1) + g(y2) on Elex.
inline ExtScalar elex_inf_convolution(const ElexFn& f, const ElexFn& g, const ElexPoint& y, int n = 8) {
    std::vector<std::pair<ElexPoint, ElexPoint>> splits;
    switch (y.kind) {
    case ElexPoint::lambda:
        for (const auto& q : grid(y.t, n))
            splits.push_back({{ElexPoint::lambda, q}, {ElexPoint::lambda, y.t - q}});
        break;
    case ElexPoint::mu:
        for (const auto& q : grid(y.t, n)) {
            splits.push_back({{ElexPoint::mu, q}, {ElexPoint::mu, y.t - q}});
            splits.push_back({{ElexPoint::lambda, q}, {ElexPoint::mu, y.t}});
            splits.push_back({{ElexPoint::mu, y.t}, {ElexPoint::lambda, q}});
        }
        break;
    case ElexPoint::top:
        for (int k = 0; k <= n; ++k) {
            const ElexPoint zero{ElexPoint::lambda, 0};
            splits.push_back({{ElexPoint::top, 0}, {ElexPoint::lambda, k}});
            splits.push_back({{ElexPoint::lambda, k}, {ElexPoint::top, 0}});
            splits.push_back({{ElexPoint::top, 0}, zero});
        }
        break;
    }
    std::optional<ExtScalar> best;
    for (const auto& [y1, y2] : splits) {
        const ExtScalar v = elex_eval(f, y1) + elex_eval(g, y2);
        if (!best || v < *best) best = v;
    }
    return *best;
}

// ---------------------------------------------------------------- coordinate models

/// Each bundled cone embedded additively in a power of [0,∞]: E1 as itself, E2 as
/// [0,∞]², and Elex through the values of a map at (1,b) for b = -4..4 and at (0,1).
inline ExtVector model_generator(const std::string& fixture, const std::string& g) {
    if (fixture == "E1") return {1};
    if (fixture == "E2") return g == "e1" ? ExtVector{1, 0} : ExtVector{0, 1};
    ExtVector v(10, g == "x1" ? ExtScalar(1) : inf());
    v[9] = g == "x1" ? 0 : 1;
    return v;
}

inline ExtVector model_idempotent(const std::string& fixture, const std::string& w) {
    if (fixture == "E1") return {w == "top" ? inf() : ExtScalar(0)};
    if (fixture == "E2")
        return {w == "p1" || w == "top" ? inf() : ExtScalar(0), w == "p2" || w == "top" ? inf() : ExtScalar(0)};
    ExtVector v(10, w == "bot" ? ExtScalar(0) : inf());
    v[9] = w == "top" ? inf() : ExtScalar(0);
    return v;
}

inline ExtVector model_add(const ExtVector& x, const ExtVector& y) {
    ExtVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
    return out;
}

inline ExtVector model_scale(const Rational& t, const ExtVector& x) {
    ExtVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = ExtScalar(t) * x[i];
    return out;
}

/// Model of w + Σ c_x x.
inline ExtVector model_sum(const ecc::ConePresentation& p, const std::string& fixture, ecc::IdemId w,
                           const ecc::Coeffs& terms) {
    ExtVector v = model_idempotent(fixture, p.idem_name(w));
    for (const auto& [x, c] : terms) v = model_add(v, model_scale(c, model_generator(fixture, p.gen_name(x))));
    return v;
}

/// a ≤ w for an idempotent w holds iff a + w = w.
inline bool model_below_idempotent(const ExtVector& a, const ExtVector& w) { return model_add(a, w) == w; }

/// Support idempotent lim a/n: infinite coordinates stay, finite ones vanish.
inline ExtVector model_support(const ExtVector& a) {
    ExtVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i].is_infinite() ? inf() : ExtScalar(0);
    return out;
}

/// O_w, P_w and P̃_w from the model, as sorted generator lists.
struct ModelSets {
    std::vector<ecc::GenId> o;
    std::vector<ecc::GenId> p;
    std::vector<ecc::GenId> p_tilde;
};

inline ModelSets model_sets(const ecc::ConePresentation& p, const std::string& fixture, ecc::IdemId w) {
    ModelSets s;
    const ExtVector wv = model_idempotent(fixture, p.idem_name(w));
    for (ecc::GenId x = 0; x < p.gen_count(); ++x) {
        const ExtVector xv = model_generator(fixture, p.gen_name(x));
        const bool supported = model_below_idempotent(model_support(xv), wv);
        if (!model_below_idempotent(xv, wv)) {
            s.o.push_back(x);
            if (supported) s.p.push_back(x);
        }
        if (supported) s.p_tilde.push_back(x);
    }
    return s;
}

/// Order of W read off the model.
inline bool model_idem_leq(const ecc::ConePresentation& p, const std::string& fixture, ecc::IdemId a, ecc::IdemId b) {
    return model_below_idempotent(model_idempotent(fixture, p.idem_name(a)), model_idempotent(fixture, p.idem_name(b)));
}

/// Greatest lower bound (or least upper bound) in W by exhaustive search.
inline ecc::IdemId model_idem_bound(const ecc::ConePresentation& p, const std::string& fixture, ecc::IdemId a,
                                    ecc::IdemId b, bool lower) {
    std::optional<ecc::IdemId> best;
    for (ecc::IdemId c = 0; c < p.idem_count(); ++c) {
        const bool bound = lower ? model_idem_leq(p, fixture, c, a) && model_idem_leq(p, fixture, c, b)
                                 : model_idem_leq(p, fixture, a, c) && model_idem_leq(p, fixture, b, c);
        if (!bound) continue;
        if (!best || (lower ? model_idem_leq(p, fixture, *best, c) : model_idem_leq(p, fixture, c, *best))) best = c;
    }
    return *best;
}

/// f is positive with support w: zero off O_w and strictly positive on P_w.
inline bool positive_with_support(const ecc::ConePresentation& p, const std::string& fixture, const RatVector& f,
                                  ecc::IdemId w) {
    const ModelSets s = model_sets(p, fixture, w);
    for (ecc::GenId x = 0; x < p.gen_count(); ++x) {
        const bool in_o = std::binary_search(s.o.begin(), s.o.end(), x);
        const bool in_p = std::binary_search(s.p.begin(), s.p.end(), x);
        if (!in_o && sgn(f[x]) != 0) return false;
        if (in_p && sgn(f[x]) <= 0) return false;
    }
    return true;
}

inline bool positive_or_zero(const ecc::ConePresentation& p, const std::string& fixture, const RatVector& f) {
    for (ecc::IdemId w = 0; w < p.idem_count(); ++w)
        if (positive_with_support(p, fixture, f, w)) return true;
    return false;
}

/// Σ c_x f(x) when support(y) ≤ w, else ∞, for f positive with support w.
inline ExtScalar model_pairing(const ecc::ConePresentation& p, const std::string& fixture, const ecc::ConeElement& y,
                               const RatVector& f, ecc::IdemId w) {
    if (!model_idem_leq(p, fixture, y.support, w)) return inf();
    Rational sum = 0;
    for (const auto& [x, c] : y.coeffs) sum += c * f[x];
    return ExtScalar(sum);
}

}  // namespace oracle
