#include "ecc/afun.hpp"

#include "ecc/errors.hpp"
#include "ecc/linprog.hpp"

#include <sstream>

namespace ecc {

void check_function(const ConePresentation& p, const LscFn& f) {
    if (f.support >= p.idem_count()) throw PreconditionError("function support out of range");
    const auto& rays = p.rays(f.support);
    if (f.values.size() != rays.size())
        throw PreconditionError("function must carry a value on every ray of " + p.idem_name(f.support));
    for (GenId r : rays) {
        const auto it = f.values.find(r);
        if (it == f.values.end()) throw PreconditionError("missing value on ray " + p.gen_name(r));
        if (it->second.is_zero()) throw PreconditionError("function values on rays must be strictly positive");
    }
}

bool is_affine(const LscFn& f) {
    for (const auto& [x, v] : f.values)
        if (v.is_infinite()) return false;
    return true;
}

void require_affine(const LscFn& f, const char* what) {
    if (!is_affine(f)) throw PreconditionError(std::string(what) + " requires an affine function");
}

LscFn zero_function(const ConePresentation& p) { return LscFn{p.top(), {}}; }

bool is_zero_function(const ConePresentation& p, const LscFn& f) { return f.support == p.top(); }

ExtScalar eval_generator(const ConePresentation& p, const LscFn& f, GenId x) {
    if (!p.leq(p.support(x), f.support)) return ExtScalar::infinity();
    if (const auto it = f.values.find(x); it != f.values.end()) return it->second;
    ExtScalar sum;
    for (const auto& [r, c] : p.red(x, f.support)) sum += ExtScalar(c) * f.values.at(r);
    return sum;
}

ExtScalar eval(const ConePresentation& p, const LscFn& f, const ConeElement& y) {
    if (!p.leq(y.support, f.support)) return ExtScalar::infinity();
    ExtScalar sum;
    for (const auto& [x, q] : y.coeffs) sum += ExtScalar(q) * eval_generator(p, f, x);
    return sum;
}

LscFn afun_add(const ConePresentation& p, const LscFn& f, const LscFn& g) {
    LscFn out{p.meet(f.support, g.support), {}};
    for (GenId r : p.rays(out.support)) out.values[r] = eval_generator(p, f, r) + eval_generator(p, g, r);
    return out;
}

LscFn afun_scale(const ConePresentation& p, const ExtScalar& t, const LscFn& f) {
    if (t.is_zero()) return zero_function(p);
    LscFn out = f;
    for (auto& [r, v] : out.values) v = t * v;
    return out;
}

LscFn infty_scale(const LscFn& f) {
    LscFn out = f;
    for (auto& [r, v] : out.values) v = ExtScalar::infinity();
    return out;
}

bool afun_compare(const ConePresentation& p, const LscFn& f, const LscFn& g, Comparison c) {
    if (c == Comparison::lhd) require_affine(f, "the relation lhd");
    if (!p.leq(g.support, f.support)) return false;
    for (GenId x = 0; x < p.gen_count(); ++x) {
        if (!p.leq(p.support(x), g.support)) continue;
        const ExtScalar fx = eval_generator(p, f, x);
        const ExtScalar gx = eval_generator(p, g, x);
        if (c == Comparison::leq) {
            if (fx > gx) return false;
            continue;
        }
        if (fx.is_infinite()) return false;
        if (!(fx < gx || (fx.is_zero() && gx.is_zero()))) return false;
    }
    return true;
}

bool afun_leq(const ConePresentation& p, const LscFn& f, const LscFn& g) {
    return afun_compare(p, f, g, Comparison::leq);
}
bool afun_lhd(const ConePresentation& p, const LscFn& f, const LscFn& g) {
    return afun_compare(p, f, g, Comparison::lhd);
}
bool afun_way_below(const ConePresentation& p, const LscFn& f, const LscFn& g) {
    return afun_compare(p, f, g, Comparison::way_below);
}

LscFn approximant(const LscFn& g, unsigned n) {
    const Rational cap = Rational(Integer(1) << n);
    const Rational factor = 1 - 1 / cap;
    LscFn out = g;
    for (auto& [r, v] : out.values) {
        const Rational capped = v.is_infinite() || v.value() > cap ? cap : v.value();
        v = ExtScalar(Rational(factor * capped));
    }
    return out;
}

Subtraction afun_subtract(const ConePresentation& p, const LscFn& f, const LscFn& g) {
    check_function(p, f);
    check_function(p, g);
    if (!afun_lhd(p, f, g)) throw PreconditionError("subtraction requires f lhd g");
    Subtraction out{LscFn{g.support, {}}, Rational(1)};
    for (GenId r : p.rays(g.support)) {
        const ExtScalar gr = g.values.at(r);
        const ExtScalar hr = gr.minus(eval_generator(p, f, r));
        out.h.values[r] = hr;
        if (gr.is_finite()) {
            const Rational ratio = hr.value() / gr.value();
            if (ratio < out.epsilon) out.epsilon = ratio;
        }
    }
    if (afun_add(p, f, out.h) != g) throw InvariantError("subtraction: f + h differs from g");
    if (sgn(out.epsilon) <= 0) throw InvariantError("subtraction: no positive gap");
    return out;
}

RieszSplit riesz_decompose(const ConePresentation& p, const LscFn& f, const LscFn& g1, const LscFn& g2) {
    for (const LscFn* h : {&f, &g1, &g2}) {
        check_function(p, *h);
        require_affine(*h, "riesz_decompose");
    }
    if (!afun_lhd(p, f, afun_add(p, g1, g2))) throw PreconditionError("riesz_decompose requires f lhd g1 + g2");

    for (IdemId v1 = 0; v1 < p.idem_count(); ++v1) {
        if (!p.leq(g1.support, v1)) continue;
        for (IdemId v2 = 0; v2 < p.idem_count(); ++v2) {
            if (!p.leq(g2.support, v2) || p.meet(v1, v2) != f.support) continue;
            const auto& r1 = p.rays(v1);
            const auto& r2 = p.rays(v2);
            const std::size_t t = r1.size() + r2.size();
            LinearProgram lp;
            lp.num_vars = t + 1;
            lp.objective.assign(t + 1, Rational(0));
            lp.objective[t] = 1;
            lp.add({{t, Rational(1)}}, Relation::less_equal, Rational(1));
            for (std::size_t k = 0; k < t; ++k) lp.add({{k, Rational(1)}, {t, Rational(-1)}}, Relation::greater_equal, 0);

            // Value of part (v, rays, offset) at generator x as linear terms.
            auto terms_at = [&p](GenId x, IdemId v, const std::vector<GenId>& rays, std::size_t offset) {
                std::vector<std::pair<std::size_t, Rational>> terms;
                const Coeffs& red = p.red(x, v);
                for (std::size_t k = 0; k < rays.size(); ++k) {
                    const auto it = red.find(rays[k]);
                    if (it != red.end()) terms.emplace_back(offset + k, it->second);
                }
                return terms;
            };
            for (GenId r : p.rays(f.support)) {
                auto terms = terms_at(r, v1, r1, 0);
                const auto more = terms_at(r, v2, r2, r1.size());
                terms.insert(terms.end(), more.begin(), more.end());
                lp.add(terms, Relation::equal, f.values.at(r).value());
            }
            auto strict_below = [&](const LscFn& g, IdemId v, const std::vector<GenId>& rays, std::size_t offset) {
                for (GenId x = 0; x < p.gen_count(); ++x) {
                    if (!p.leq(p.support(x), g.support) || p.below(x, g.support)) continue;
                    auto terms = terms_at(x, v, rays, offset);
                    terms.emplace_back(t, Rational(1));
                    lp.add(terms, Relation::less_equal, eval_generator(p, g, x).value());
                }
            };
            strict_below(g1, v1, r1, 0);
            strict_below(g2, v2, r2, r1.size());

            const LpSolution sol = maximize(lp);
            if (sol.status != LpStatus::optimal || sgn(sol.value) <= 0) continue;
            RieszSplit out{LscFn{v1, {}}, LscFn{v2, {}}};
            for (std::size_t k = 0; k < r1.size(); ++k) out.f1.values[r1[k]] = ExtScalar(sol.x[k]);
            for (std::size_t k = 0; k < r2.size(); ++k) out.f2.values[r2[k]] = ExtScalar(sol.x[r1.size() + k]);
            if (afun_add(p, out.f1, out.f2) != f || !afun_lhd(p, out.f1, g1) || !afun_lhd(p, out.f2, g2))
                throw InvariantError("riesz_decompose: solver output fails verification");
            return out;
        }
    }
    throw InvariantError("riesz_decompose: no feasible support pair; the presentation is not a valid cone");
}

ExtScalar inf_convolution(const ConePresentation& p, const LscFn& f, const LscFn& g, const ConeElement& y) {
    check_element(p, y);
    std::optional<Rational> best;
    const auto& target = p.rays(y.support);
    for (IdemId u1 = 0; u1 < p.idem_count(); ++u1) {
        if (!p.leq(u1, f.support)) continue;
        for (IdemId u2 = 0; u2 < p.idem_count(); ++u2) {
            if (!p.leq(u2, g.support) || p.join(u1, u2) != y.support) continue;
            struct Var {
                GenId ray;
                ExtScalar cost;
            };
            std::vector<Var> vars;
            for (GenId s : p.rays(u1)) vars.push_back({s, eval_generator(p, f, s)});
            for (GenId s : p.rays(u2)) vars.push_back({s, eval_generator(p, g, s)});
            LinearProgram lp;
            lp.num_vars = vars.size();
            lp.objective.assign(vars.size(), Rational(0));
            for (std::size_t k = 0; k < vars.size(); ++k) {
                if (vars[k].cost.is_infinite())
                    lp.add({{k, Rational(1)}}, Relation::equal, 0);
                else
                    lp.objective[k] = -vars[k].cost.value();
            }
            for (GenId r : target) {
                std::vector<std::pair<std::size_t, Rational>> terms;
                for (std::size_t k = 0; k < vars.size(); ++k) {
                    const Coeffs& red = p.red(vars[k].ray, y.support);
                    const auto it = red.find(r);
                    if (it != red.end()) terms.emplace_back(k, it->second);
                }
                const auto yr = y.coeffs.find(r);
                const Rational rhs = yr == y.coeffs.end() ? Rational(0) : yr->second;
                if (terms.empty()) {
                    if (sgn(rhs) != 0) lp.add({}, Relation::equal, 1);  // unreachable coordinate
                    continue;
                }
                lp.add(terms, Relation::equal, rhs);
            }
            const LpSolution sol = maximize(lp);
            if (sol.status != LpStatus::optimal) continue;
            const Rational value = -sol.value;
            if (!best || value < *best) best = value;
        }
    }
    if (!best) return ExtScalar::infinity();
    return ExtScalar(*best);
}

MeetOutcome afun_meet(const ConePresentation& p, const LscFn& f, const LscFn& g) {
    check_function(p, f);
    check_function(p, g);
    const IdemId u = p.join(f.support, g.support);
    MeetOutcome out{LscFn{u, {}}, false};
    for (GenId r : p.rays(u)) out.value.values[r] = std::min(eval_generator(p, f, r), eval_generator(p, g, r));

    bool exact = afun_leq(p, out.value, f) && afun_leq(p, out.value, g);
    std::map<GenId, ExtScalar> conv;
    for (GenId r : p.rays(u)) {
        conv[r] = inf_convolution(p, f, g, generator_element(p, r));
        if (out.value.values.at(r) < conv[r]) exact = false;
    }
    if (exact) return out;

    out.used_fallback = true;
    out.value.values = conv;
    for (const auto& [r, v] : conv)
        if (v.is_zero()) throw InvariantError("meet: inf-convolution vanishes on a ray");
    if (!afun_leq(p, out.value, f) || !afun_leq(p, out.value, g))
        throw InvariantError("meet: inf-convolution is not a lower bound");
    return out;
}

std::string to_string(const ConePresentation& p, const LscFn& f) {
    std::ostringstream os;
    os << "(" << p.idem_name(f.support) << ", {";
    bool first = true;
    for (const auto& [x, v] : f.values) {
        os << (first ? "" : ", ") << p.gen_name(x) << ": " << v;
        first = false;
    }
    os << "})";
    return os.str();
}

}  // namespace ecc
