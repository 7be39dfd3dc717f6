#include "ecc/ehs_engine.hpp"

#include "ecc/errors.hpp"
#include "ecc/random.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <tuple>
#include <set>
#include <sstream>

namespace ecc {

void check_morphism(const ConePresentation& p, const CuMorphism& phi) {
    for (const auto& f : phi.gens) {
        check_function(p, f);
        require_affine(f, "a Cu-morphism generator image");
    }
}

LscFn morphism_apply(const ConePresentation& p, const CuMorphism& phi, const RatVector& x) {
    if (x.size() != phi.gens.size()) throw PreconditionError("vector length differs from the morphism dimension");
    LscFn sum = zero_function(p);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (sgn(x[i]) < 0) throw PreconditionError("negative coordinate in a cone vector");
        if (sgn(x[i]) != 0) sum = afun_add(p, sum, afun_scale(p, ExtScalar(x[i]), phi.gens[i]));
    }
    return sum;
}

LscFn morphism_apply(const ConePresentation& p, const CuMorphism& phi, const ExtVector& x) {
    if (x.size() != phi.gens.size()) throw PreconditionError("vector length differs from the morphism dimension");
    LscFn sum = zero_function(p);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero()) sum = afun_add(p, sum, afun_scale(p, x[i], phi.gens[i]));
    return sum;
}

bool operator==(const Degree& a, const Degree& b) {
    return a.M == b.M && a.n1 == b.n1 && a.n2 == b.n2 && a.n == b.n;
}

bool operator<(const Degree& a, const Degree& b) {
    if (a.M != b.M) return a.M < b.M;
    if (a.n1 != b.n1) return a.n1 < b.n1;
    if (a.n2 != b.n2) return a.n2 < b.n2;
    return a.n < b.n;
}

std::string to_string(const Degree& d) {
    return "(" + d.M.get_str() + ", " + std::to_string(d.n1) + ", " + std::to_string(d.n2) + ", " +
           std::to_string(d.n) + ")";
}

Degree degree(const IntVector& x, const IntVector& y) {
    if (x.size() != y.size()) throw PreconditionError("degree: length mismatch");
    Degree d;
    d.n = x.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Integer diff = abs(Integer(x[i] - y[i]));
        if (diff > d.M) d.M = diff;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] - y[i] == d.M) ++d.n1;
        if (y[i] - x[i] == d.M) ++d.n2;
    }
    return d;
}

namespace {

struct Coord {
    LscFn f;
    Integer x;
    Integer y;
    RatVector q;  // row of the accumulated matrix
};

RatVector row_sum(const RatVector& a, const RatVector& b) {
    RatVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

LscFn combine(const ConePresentation& p, const std::vector<std::pair<Rational, const LscFn*>>& terms) {
    LscFn sum = zero_function(p);
    for (const auto& [c, f] : terms) {
        if (sgn(c) < 0) throw InvariantError("negative weight in a cone combination");
        if (sgn(c) != 0) sum.support = p.meet(sum.support, f->support);
    }
    for (const GenId r : p.rays(sum.support)) {
        ExtScalar v;
        for (const auto& [c, f] : terms)
            if (sgn(c) != 0) v += ExtScalar(c) * eval_generator(p, *f, r);
        sum.values[r] = v;
    }
    return sum;
}

LscFn value_at(const ConePresentation& p, const std::vector<Coord>& cs, bool use_x) {
    std::vector<std::pair<Rational, const LscFn*>> terms;
    for (const auto& c : cs) terms.emplace_back(Rational(use_x ? c.x : c.y), &c.f);
    return combine(p, terms);
}

// Splits f into parts with part_k ◁ targets[k]; requires f ◁ Σ targets.
// Parts are kept sparse: a target is skipped whenever the rest absorbs the remainder.
std::vector<LscFn> riesz_split(const ConePresentation& p, const LscFn& f, const std::vector<LscFn>& targets) {
    if (targets.empty()) {
        if (!is_zero_function(p, f)) throw InvariantError("a nonzero function is way below zero");
        return {};
    }
    std::vector<LscFn> parts(targets.size(), zero_function(p));
    if (is_zero_function(p, f)) return parts;
    for (std::size_t k = 0; k < targets.size(); ++k)
        if (afun_lhd(p, f, targets[k])) {
            parts[k] = f;
            return parts;
        }
    std::vector<LscFn> suffix(targets.size());
    suffix.back() = targets.back();
    for (std::size_t k = targets.size() - 1; k-- > 0;) suffix[k] = afun_add(p, targets[k], suffix[k + 1]);
    if (!afun_lhd(p, f, suffix.front())) throw InvariantError("Riesz split: the function is not lhd the target sum");
    LscFn remaining = f;
    for (std::size_t k = 0; k + 1 < targets.size(); ++k) {
        if (afun_lhd(p, remaining, suffix[k + 1])) continue;
        RieszSplit s = riesz_decompose(p, remaining, targets[k], suffix[k + 1]);
        parts[k] = std::move(s.f1);
        remaining = std::move(s.f2);
    }
    parts.back() = std::move(remaining);
    return parts;
}

void record_cancellation(const ConePresentation& p, Factorization& out, LscFn f, LscFn h, LscFn g, LscFn h2) {
    if (!afun_way_below(p, afun_add(p, f, h), afun_add(p, g, h2)))
        throw InvariantError("cancellation premise f + h << g + h' fails");
    if (!afun_way_below(p, f, g)) throw InvariantError("weak cancellation conclusion f << g fails");
    out.cancellations.push_back({std::move(f), std::move(h), std::move(g), std::move(h2)});
}

// Rows of Q that coincide are merged by adding their ψ images; zero rows and
// rows with zero image are dropped.
void merge_equal_rows(const ConePresentation& p, Matrix& q, CuMorphism& psi) {
    std::vector<RatVector> rows;
    std::vector<LscFn> gens;
    std::map<RatVector, std::size_t> row_index;
    for (std::size_t i = 0; i < q.rows(); ++i) {
        RatVector r = q.row(i);
        if (std::all_of(r.begin(), r.end(), [](const Rational& c) { return sgn(c) == 0; })) continue;
        if (is_zero_function(p, psi.gens[i])) continue;
        const auto [it, fresh] = row_index.try_emplace(r, rows.size());
        if (fresh) {
            rows.push_back(std::move(r));
            gens.push_back(psi.gens[i]);
        } else {
            gens[it->second] = afun_add(p, gens[it->second], psi.gens[i]);
        }
    }
    q = Matrix::from_rows(rows, q.cols());
    psi.gens = std::move(gens);
}

Degree degree_of(const std::vector<Coord>& cs) {
    IntVector x;
    IntVector y;
    for (const auto& c : cs) {
        x.push_back(c.x);
        y.push_back(c.y);
    }
    return degree(x, y);
}

}  // namespace

Factorization core_triangle(const ConePresentation& p, const CuMorphism& phi, const IntVector& x, const IntVector& y,
                            const EngineOptions& options) {
    check_morphism(p, phi);
    const std::size_t n = phi.gens.size();
    if (x.size() != n || y.size() != n) throw PreconditionError("core_triangle: length mismatch");
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] < 0 || y[i] < 0) throw PreconditionError("core_triangle: negative coordinate");

    std::vector<Coord> active;
    for (std::size_t i = 0; i < n; ++i) {
        RatVector q(n, Rational(0));
        q[i] = 1;
        active.push_back({phi.gens[i], x[i], y[i], std::move(q)});
    }
    if (!afun_way_below(p, value_at(p, active, true), value_at(p, active, false)))
        throw PreconditionError("core_triangle requires phi(x) << phi(y)");

    Factorization out;
    std::vector<Coord> frozen;
    Degree current = degree_of(active);
    out.segments.push_back(0);
    out.log.push_back({current, "start"});

    for (std::size_t step = 0;; ++step) {
        if (step >= options.step_budget) throw InvariantError("core_triangle: step budget exhausted");
        bool dominated = true;
        for (const auto& c : active) dominated = dominated && c.x <= c.y;
        if (dominated) break;

        std::string branch;
        const auto is_zero = [&p](const Coord& c) {
            return is_zero_function(p, c.f) ||
                   (c.y == 0 && std::all_of(c.q.begin(), c.q.end(), [](const Rational& r) { return sgn(r) == 0; }));
        };
        const auto is_equal = [](const Coord& c) { return c.x == c.y; };
        std::map<std::tuple<Integer, Integer, RatVector>, std::size_t> first_seen;
        std::vector<Coord> merged;
        for (const auto& c : active) {
            const auto [it, fresh] = first_seen.try_emplace({c.x, c.y, c.q}, merged.size());
            if (fresh)
                merged.push_back(c);
            else
                merged[it->second].f = afun_add(p, merged[it->second].f, c.f);
        }
        if (merged.size() < active.size()) {
            branch = "merge";
            active = std::move(merged);
        } else if (std::any_of(active.begin(), active.end(), is_zero)) {
            branch = "drop-zero";
            std::erase_if(active, is_zero);
        } else if (std::any_of(active.begin(), active.end(), is_equal)) {
            branch = "equal";
            std::vector<Coord> kept;
            std::copy_if(active.begin(), active.end(), std::back_inserter(kept), is_equal);
            std::erase_if(active, is_equal);
            const LscFn common = value_at(p, kept, true);
            record_cancellation(p, out, value_at(p, active, true), common, value_at(p, active, false), common);
            frozen.insert(frozen.end(), kept.begin(), kept.end());
        } else {
            Integer m1 = 0;
            Integer m2 = 0;
            std::size_t i1 = active.size();
            std::size_t j1 = active.size();
            for (std::size_t k = 0; k < active.size(); ++k) {
                const Integer d = active[k].x - active[k].y;
                if (d > m1) {
                    m1 = d;
                    i1 = k;
                }
                if (-d > m2) {
                    m2 = -d;
                    j1 = k;
                }
            }
            auto in_i = [&active](std::size_t k) { return active[k].x > active[k].y; };

            std::vector<Coord> next;
            if (m1 >= m2) {
                branch = "split-I";
                std::vector<std::pair<Rational, const LscFn*>> fi;
                std::vector<std::pair<Rational, const LscFn*>> gj;
                std::vector<std::pair<Rational, const LscFn*>> common;
                std::vector<LscFn> targets;
                for (std::size_t k = 0; k < active.size(); ++k) {
                    const Coord& c = active[k];
                    common.emplace_back(Rational(in_i(k) ? c.y : c.x), &c.f);
                    if (in_i(k))
                        fi.emplace_back(Rational(c.x - c.y), &c.f);
                    else {
                        gj.emplace_back(Rational(c.y - c.x), &c.f);
                        targets.push_back(c.f);
                    }
                }
                const LscFn h = combine(p, common);
                record_cancellation(p, out, combine(p, fi), h, combine(p, gj), h);
                const std::vector<LscFn> parts = riesz_split(p, active[i1].f, targets);
                std::vector<Coord> g_coords;
                std::size_t t = 0;
                for (std::size_t k = 0; k < active.size(); ++k) {
                    if (k == i1) continue;
                    const Coord& c = active[k];
                    if (in_i(k)) {
                        next.push_back(std::move(active[k]));
                        continue;
                    }
                    const LscFn& g = parts[t++];
                    next.push_back({afun_subtract(p, g, c.f).h, c.x, c.y, c.q});
                    g_coords.push_back({g, active[i1].x + c.x, active[i1].y + c.y, row_sum(active[i1].q, c.q)});
                }
                next.insert(next.end(), g_coords.begin(), g_coords.end());
            } else {
                branch = "split-J";
                const LscFn fx = value_at(p, active, true);
                const LscFn fy = value_at(p, active, false);
                // Least k with 4·2^-k·c < 1 on every nonzero entry, then the least
                // k beyond it with φ(x) ≪ (1 - 2^-k)φ(y); the latter is monotone in k.
                Integer largest = 0;
                for (const auto& c : active) largest = std::max({largest, c.x, c.y});
                unsigned k0 = 1;
                while ((Integer(1) << k0) <= 4 * largest) ++k0;
                const auto dyadic = [](unsigned k) {
                    Rational e(Integer(1), Integer(1) << k);
                    e.canonicalize();
                    return e;
                };
                const auto gap = [&](unsigned k) {
                    return afun_way_below(p, fx, afun_scale(p, ExtScalar(Rational(1 - dyadic(k))), fy));
                };
                unsigned lo = k0;
                unsigned hi = k0;
                for (unsigned stride = 1; !gap(hi); stride *= 2) {
                    if (hi > 1U << 16) throw InvariantError("core_triangle: no dyadic gap up to 2^-65536");
                    lo = hi + 1;
                    hi += stride;
                }
                while (lo < hi) {
                    const unsigned mid = lo + (hi - lo) / 2;
                    if (gap(mid))
                        hi = mid;
                    else
                        lo = mid + 1;
                }
                const Rational eps = dyadic(hi);
                const LscFn h = afun_subtract(p, fx, afun_scale(p, ExtScalar(Rational(1 - eps)), fy)).h;

                const Rational shrink = 1 - 2 * eps;
                std::vector<std::pair<Rational, const LscFn*>> lhs;
                std::vector<std::pair<Rational, const LscFn*>> rhs{{Rational(1), &h}};
                std::vector<std::pair<Rational, const LscFn*>> common;
                std::vector<LscFn> targets{h};
                for (std::size_t k = 0; k < active.size(); ++k) {
                    const Coord& c = active[k];
                    if (in_i(k)) {
                        rhs.emplace_back(Rational(c.x) - shrink * c.y, &c.f);
                        common.emplace_back(shrink * c.y, &c.f);
                        targets.push_back(c.f);
                    } else {
                        lhs.emplace_back(shrink * c.y - c.x, &c.f);
                        common.emplace_back(Rational(c.x), &c.f);
                    }
                }
                const LscFn shared = combine(p, common);
                record_cancellation(p, out, combine(p, lhs), shared, combine(p, rhs), shared);

                const std::vector<LscFn> parts = riesz_split(p, active[j1].f, targets);
                const LscFn& h_prime = parts[0];
                const LscFn h_second = afun_subtract(p, h_prime, h).h;
                const RatVector zero_row(n, Rational(0));
                std::vector<Coord> g_coords;
                std::size_t t = 1;
                for (std::size_t k = 0; k < active.size(); ++k) {
                    if (k == j1) continue;
                    const Coord& c = active[k];
                    if (!in_i(k)) {
                        next.push_back(std::move(active[k]));
                        continue;
                    }
                    const LscFn& g = parts[t++];
                    next.push_back({afun_subtract(p, g, c.f).h, c.x, c.y, c.q});
                    g_coords.push_back({g, active[j1].x + c.x, active[j1].y + c.y, row_sum(active[j1].q, c.q)});
                }
                next.insert(next.end(), g_coords.begin(), g_coords.end());
                next.push_back({h_second, Integer(1), Integer(0), zero_row});
                next.push_back({h_prime, active[j1].x + 1, active[j1].y, active[j1].q});
            }
            active = std::move(next);
            if (!afun_way_below(p, value_at(p, active, true), value_at(p, active, false)))
                throw InvariantError("core_triangle: the way-below relation was lost after " + branch);
        }

        const Degree d = degree_of(active);
        if (!(d < current))
            throw InvariantError("core_triangle: degree " + to_string(d) + " does not decrease below " +
                                 to_string(current));
        current = d;
        out.log.push_back({d, branch});
    }

    std::vector<RatVector> rows;
    for (const auto* list : {&frozen, &active})
        for (const auto& c : *list) {
            rows.push_back(c.q);
            out.psi.gens.push_back(c.f);
        }
    out.Q = Matrix::from_rows(rows, n);
    merge_equal_rows(p, out.Q, out.psi);
    if (!out.Q.is_integral() || !out.Q.is_nonnegative()) throw InvariantError("core_triangle: Q is not integral");
    if (!composes_to(p, out, phi)) throw InvariantError("core_triangle: psi o Q differs from phi");
    RatVector xr(x.begin(), x.end());
    RatVector yr(y.begin(), y.end());
    const RatVector qx = ecc::apply(out.Q, xr);
    const RatVector qy = ecc::apply(out.Q, yr);
    for (std::size_t k = 0; k < qx.size(); ++k)
        if (qx[k] > qy[k]) throw InvariantError("core_triangle: Qx is not below Qy");
    return out;
}

bool composes_to(const ConePresentation& p, const Factorization& fact, const CuMorphism& phi) {
    if (fact.Q.cols() != phi.gens.size() || fact.Q.rows() != fact.psi.gens.size()) return false;
    for (std::size_t i = 0; i < phi.gens.size(); ++i) {
        std::vector<std::pair<Rational, const LscFn*>> terms;
        for (std::size_t k = 0; k < fact.Q.rows(); ++k) terms.emplace_back(fact.Q.at(k, i), &fact.psi.gens[k]);
        if (combine(p, terms) != phi.gens[i]) return false;
    }
    return true;
}

namespace {

// Next dyadic point of denominator den strictly above (or below) each nonzero entry.
RatVector sandwich(const RatVector& v, const Integer& den, bool upper) {
    RatVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (sgn(v[i]) == 0) continue;
        const Rational scaled = v[i] * den;
        Integer k;
        if (upper) {
            mpz_fdiv_q(k.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
            k += 1;
        } else {
            mpz_cdiv_q(k.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
            k -= 1;
        }
        out[i] = Rational(k) / den;
    }
    return out;
}

}  // namespace

Factorization triangle(const ConePresentation& p, const CuMorphism& phi, const std::vector<RatVector>& F,
                       const EngineOptions& options) {
    check_morphism(p, phi);
    const std::size_t n = phi.gens.size();
    for (const auto& v : F) {
        if (v.size() != n) throw PreconditionError("triangle: vector length mismatch");
        for (const auto& q : v)
            if (sgn(q) < 0) throw PreconditionError("triangle: negative coordinate");
    }
    std::vector<LscFn> images;
    for (const auto& v : F) images.push_back(morphism_apply(p, phi, v));

    Factorization out;
    out.Q = Matrix::identity(n);
    out.psi = phi;
    std::vector<std::pair<std::size_t, std::size_t>> fixed;
    auto holds = [&](std::size_t a, std::size_t b) {
        return vec_way_below(to_ext(ecc::apply(out.Q, F[a])), to_ext(ecc::apply(out.Q, F[b])));
    };
    for (std::size_t a = 0; a < F.size(); ++a)
        for (std::size_t b = 0; b < F.size(); ++b) {
            if (!afun_way_below(p, images[a], images[b])) continue;
            if (!holds(a, b)) {
                const RatVector xa = ecc::apply(out.Q, F[a]);
                const RatVector yb = ecc::apply(out.Q, F[b]);
                Integer den = 1;
                RatVector xs;
                RatVector ys;
                for (unsigned d = 0;; ++d) {
                    if (d > 256) throw InvariantError("triangle: no dyadic sandwich denominator up to 2^256");
                    xs = sandwich(xa, den, true);
                    ys = sandwich(yb, den, false);
                    if (afun_way_below(p, morphism_apply(p, out.psi, xs), morphism_apply(p, out.psi, ys))) break;
                    den *= 2;
                }
                IntVector xi;
                IntVector yi;
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    const Rational sx = xs[i] * den;
                    const Rational sy = ys[i] * den;
                    xi.push_back(sx.get_num());
                    yi.push_back(sy.get_num());
                }
                Factorization step = core_triangle(p, out.psi, xi, yi, options);
                out.Q = step.Q * out.Q;
                out.psi = std::move(step.psi);
                merge_equal_rows(p, out.Q, out.psi);
                out.segments.push_back(out.log.size());
                out.log.insert(out.log.end(), step.log.begin(), step.log.end());
                out.cancellations.insert(out.cancellations.end(), step.cancellations.begin(),
                                         step.cancellations.end());
                if (!holds(a, b)) throw InvariantError("triangle: factorization did not separate the pair");
                for (const auto& [fa, fb] : fixed)
                    if (!holds(fa, fb)) throw InvariantError("triangle: a previously fixed pair was lost");
            }
            fixed.emplace_back(a, b);
        }
    if (!composes_to(p, out, phi)) throw InvariantError("triangle: psi o Q differs from phi");
    return out;
}

std::string descent_log(const Factorization& fact) {
    std::ostringstream os;
    for (const auto& s : fact.log)
        os << s.degree.M.get_str() << ' ' << s.degree.n1 << ' ' << s.degree.n2 << ' ' << s.degree.n << ' '
           << s.branch << '\n';
    return os.str();
}

std::vector<RatVector> probe_set(std::size_t k, std::size_t n, std::size_t cap) {
    const std::size_t base = 2 * k + 1;
    std::size_t total = 1;
    bool small = true;
    for (std::size_t i = 0; i < n && small; ++i) {
        total *= base;
        small = total <= cap;
    }
    std::vector<RatVector> out;
    if (small) {
        for (std::size_t idx = 0; idx < total; ++idx) {
            RatVector v(n);
            std::size_t rest = idx;
            for (std::size_t i = n; i-- > 0;) {
                v[i] = Rational(static_cast<long>(rest % base), 2);
                v[i].canonicalize();
                rest /= base;
            }
            out.push_back(std::move(v));
        }
        return out;
    }
    std::set<RatVector> seen;
    for (std::uint64_t t = 0; out.size() < cap && t < 64 * cap; ++t) {
        RatVector v(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t h = mix64(mix64(mix64(k) ^ n) ^ (t * 0x100000001B3ULL + i));
            v[i] = Rational(static_cast<long>(h % base), 2);
            v[i].canonicalize();
        }
        if (seen.insert(v).second) out.push_back(std::move(v));
    }
    return out;
}

CuSystem build_inductive_system(const ConePresentation& p, const std::vector<LscFn>& sample, std::size_t rounds,
                                std::size_t probe_cap, const EngineOptions& options) {
    if (sample.empty()) throw PreconditionError("build_inductive_system: empty sample");
    CuSystem out;
    out.system.direction = Direction::inductive;
    out.psi.push_back(CuMorphism{sample});
    check_morphism(p, out.psi.front());
    out.system.indices.emplace_back("0");
    out.system.dims.push_back(sample.size());
    for (std::size_t k = 1; k <= rounds; ++k) {
        const CuMorphism& prev = out.psi.back();
        Factorization f = triangle(p, prev, probe_set(k, prev.gens.size(), probe_cap), options);
        out.system.indices.push_back(std::to_string(k));
        out.system.dims.push_back(f.Q.rows());
        out.system.steps.push_back(f.Q);
        out.psi.push_back(std::move(f.psi));
    }
    check_system(out.system);
    if (!system_commutes(p, out)) throw InvariantError("build_inductive_system: stages do not commute");
    return out;
}

bool system_commutes(const ConePresentation& p, const CuSystem& s) {
    for (std::size_t k = 0; k + 1 < s.psi.size(); ++k) {
        Factorization f;
        f.Q = s.system.steps[k];
        f.psi = s.psi[k + 1];
        if (!composes_to(p, f, s.psi[k])) return false;
    }
    return true;
}

}  // namespace ecc
