#include "ecc/fg_cone.hpp"

#include "ecc/errors.hpp"
#include "ecc/linprog.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ecc {

namespace {

template <class Map>
std::size_t lookup(const Map& index, const std::string& name, const char* what) {
    const auto it = index.find(name);
    if (it == index.end()) throw ValidationError(std::string("unknown ") + what + " '" + name + "'");
    return it->second;
}

bool contains(const std::vector<GenId>& sorted, GenId x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

std::optional<IdemId> extremal_bound(const std::vector<std::vector<bool>>& leq, IdemId a, IdemId b, bool lower) {
    const std::size_t n = leq.size();
    std::vector<IdemId> bounds;
    for (IdemId c = 0; c < n; ++c) {
        const bool ok = lower ? (leq[c][a] && leq[c][b]) : (leq[a][c] && leq[b][c]);
        if (ok) bounds.push_back(c);
    }
    for (IdemId g : bounds) {
        bool extremal = true;
        for (IdemId c : bounds)
            if (lower ? !leq[c][g] : !leq[g][c]) {
                extremal = false;
                break;
            }
        if (extremal) return g;
    }
    return std::nullopt;
}

}  // namespace

ConePresentation::ConePresentation(const ConeSpec& spec) : description_(spec.description) {
    idem_names_ = spec.idempotents;
    std::sort(idem_names_.begin(), idem_names_.end());
    for (std::size_t i = 0; i < idem_names_.size(); ++i)
        if (!idem_index_.emplace(idem_names_[i], i).second)
            throw ValidationError("duplicate idempotent '" + idem_names_[i] + "'");
    const std::size_t nw = idem_names_.size();

    std::vector<const GeneratorSpec*> gens;
    for (const auto& g : spec.generators) gens.push_back(&g);
    std::sort(gens.begin(), gens.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (std::size_t i = 0; i < gens.size(); ++i) {
        gen_names_.push_back(gens[i]->id);
        if (!gen_index_.emplace(gens[i]->id, i).second)
            throw ValidationError("duplicate generator '" + gens[i]->id + "'");
    }
    const std::size_t nx = gen_names_.size();

    leq_.assign(nw, std::vector<bool>(nw, false));
    for (IdemId a = 0; a < nw; ++a) leq_[a][a] = true;
    for (const auto& [a, b] : spec.order)
        leq_[lookup(idem_index_, a, "idempotent")][lookup(idem_index_, b, "idempotent")] = true;

    meet_.assign(nw, std::vector<std::optional<IdemId>>(nw));
    join_.assign(nw, std::vector<std::optional<IdemId>>(nw));
    for (IdemId a = 0; a < nw; ++a)
        for (IdemId b = 0; b < nw; ++b) {
            meet_[a][b] = extremal_bound(leq_, a, b, true);
            join_[a][b] = extremal_bound(leq_, a, b, false);
        }
    for (IdemId t = 0; t < nw; ++t) {
        bool is_top = true;
        bool is_bot = true;
        for (IdemId c = 0; c < nw; ++c) {
            is_top = is_top && leq_[c][t];
            is_bot = is_bot && leq_[t][c];
        }
        if (is_top && !top_) top_ = t;
        if (is_bot && !bot_) bot_ = t;
    }

    supp_.assign(nx, 0);
    below_.assign(nx, std::vector<bool>(nw, false));
    for (GenId x = 0; x < nx; ++x) {
        supp_[x] = lookup(idem_index_, gens[x]->support, "idempotent");
        for (const auto& w : gens[x]->below) below_[x][lookup(idem_index_, w, "idempotent")] = true;
    }

    rays_.assign(nw, {});
    for (const auto& [w, list] : spec.rays) {
        const IdemId wi = lookup(idem_index_, w, "idempotent");
        for (const auto& r : list) rays_[wi].push_back(lookup(gen_index_, r, "generator"));
        std::sort(rays_[wi].begin(), rays_[wi].end());
        if (std::adjacent_find(rays_[wi].begin(), rays_[wi].end()) != rays_[wi].end())
            throw ValidationError("duplicate ray in R_" + w);
    }

    red_.assign(nx, std::vector<std::optional<Coeffs>>(nw));
    for (const auto& r : spec.reductions) {
        const GenId x = lookup(gen_index_, r.gen, "generator");
        const IdemId w = lookup(idem_index_, r.idem, "idempotent");
        if (red_[x][w]) throw ValidationError("duplicate reduction for (" + r.gen + ", " + r.idem + ")");
        Coeffs c;
        for (const auto& [g, q] : r.coords) c[lookup(gen_index_, g, "generator")] = q;
        red_[x][w] = std::move(c);
    }
    for (GenId x = 0; x < nx; ++x)
        for (IdemId w = 0; w < nw; ++w) {
            if (red_[x][w] || !leq_[supp_[x]][w]) continue;
            if (below_[x][w])
                red_[x][w] = Coeffs{};
            else if (is_ray(x, w))
                red_[x][w] = Coeffs{{x, Rational(1)}};
        }
}

IdemId ConePresentation::idem(const std::string& name) const {
    const auto it = idem_index_.find(name);
    if (it == idem_index_.end()) throw PreconditionError("unknown idempotent '" + name + "'");
    return it->second;
}

GenId ConePresentation::gen(const std::string& name) const {
    const auto it = gen_index_.find(name);
    if (it == gen_index_.end()) throw PreconditionError("unknown generator '" + name + "'");
    return it->second;
}

IdemId ConePresentation::meet(IdemId a, IdemId b) const {
    if (!meet_[a][b]) throw InvariantError("no meet of " + idem_names_[a] + " and " + idem_names_[b]);
    return *meet_[a][b];
}

IdemId ConePresentation::join(IdemId a, IdemId b) const {
    if (!join_[a][b]) throw InvariantError("no join of " + idem_names_[a] + " and " + idem_names_[b]);
    return *join_[a][b];
}

IdemId ConePresentation::top() const {
    if (!top_) throw InvariantError("idempotent lattice has no top");
    return *top_;
}

IdemId ConePresentation::bot() const {
    if (!bot_) throw InvariantError("idempotent lattice has no bottom");
    return *bot_;
}

bool ConePresentation::is_ray(GenId x, IdemId w) const { return contains(rays_[w], x); }

const Coeffs& ConePresentation::red(GenId x, IdemId w) const {
    if (!red_[x][w])
        throw InvariantError("reduction of " + gen_names_[x] + " at " + idem_names_[w] + " is undefined");
    return *red_[x][w];
}

std::vector<GenId> ConePresentation::o_set(IdemId w) const {
    std::vector<GenId> out;
    for (GenId x = 0; x < gen_count(); ++x)
        if (!below_[x][w]) out.push_back(x);
    return out;
}

std::vector<GenId> ConePresentation::p_set(IdemId w) const {
    std::vector<GenId> out;
    for (GenId x = 0; x < gen_count(); ++x)
        if (!below_[x][w] && leq_[supp_[x]][w]) out.push_back(x);
    return out;
}

std::vector<GenId> ConePresentation::p_tilde_set(IdemId w) const {
    std::vector<GenId> out;
    for (GenId x = 0; x < gen_count(); ++x)
        if (leq_[supp_[x]][w]) out.push_back(x);
    return out;
}

ConeSpec ConePresentation::spec() const {
    ConeSpec s;
    s.description = description_;
    s.idempotents = idem_names_;
    for (IdemId a = 0; a < idem_count(); ++a)
        for (IdemId b = 0; b < idem_count(); ++b)
            if (a != b && leq_[a][b]) s.order.emplace_back(idem_names_[a], idem_names_[b]);
    for (GenId x = 0; x < gen_count(); ++x) {
        GeneratorSpec g{gen_names_[x], idem_names_[supp_[x]], {}};
        for (IdemId w = 0; w < idem_count(); ++w)
            if (below_[x][w]) g.below.push_back(idem_names_[w]);
        s.generators.push_back(std::move(g));
    }
    for (IdemId w = 0; w < idem_count(); ++w) {
        auto& list = s.rays[idem_names_[w]];
        for (GenId r : rays_[w]) list.push_back(gen_names_[r]);
    }
    for (GenId x = 0; x < gen_count(); ++x)
        for (IdemId w = 0; w < idem_count(); ++w) {
            if (!red_[x][w]) continue;
            ReductionSpec r{gen_names_[x], idem_names_[w], {}};
            for (const auto& [g, q] : *red_[x][w]) r.coords[gen_names_[g]] = q;
            s.reductions.push_back(std::move(r));
        }
    return s;
}

ValidationReport validate_presentation(const ConePresentation& p) {
    ValidationReport rep;
    auto fail = [&rep](const std::string& msg) { rep.violations.push_back(msg); };
    const std::size_t nw = p.idem_count();
    const std::size_t nx = p.gen_count();
    auto iname = [&p](IdemId w) { return p.idem_name(w); };
    auto gname = [&p](GenId x) { return p.gen_name(x); };

    if (nw == 0) {
        fail("lattice: no idempotents");
        return rep;
    }
    for (IdemId a = 0; a < nw; ++a)
        for (IdemId b = a + 1; b < nw; ++b)
            if (p.leq(a, b) && p.leq(b, a)) fail("lattice: antisymmetry fails for " + iname(a) + ", " + iname(b));
    for (IdemId a = 0; a < nw; ++a)
        for (IdemId b = 0; b < nw; ++b)
            for (IdemId c = 0; c < nw; ++c)
                if (p.leq(a, b) && p.leq(b, c) && !p.leq(a, c))
                    fail("lattice: transitivity fails for " + iname(a) + " <= " + iname(b) + " <= " + iname(c));
    if (!p.has_top()) fail("lattice: no top idempotent");
    if (!p.has_bot()) fail("lattice: no bottom idempotent");
    bool total = true;
    for (IdemId a = 0; a < nw; ++a)
        for (IdemId b = a + 1; b < nw; ++b) {
            if (!p.has_meet(a, b)) fail("lattice: no meet of " + iname(a) + " and " + iname(b));
            if (!p.has_join(a, b)) fail("lattice: no join of " + iname(a) + " and " + iname(b));
            total = total && p.has_meet(a, b) && p.has_join(a, b);
        }
    if (total)
        for (IdemId a = 0; a < nw; ++a)
            for (IdemId b = 0; b < nw; ++b)
                for (IdemId c = 0; c < nw; ++c)
                    if (p.meet(a, p.join(b, c)) != p.join(p.meet(a, b), p.meet(a, c)))
                        fail("lattice: distributivity fails for " + iname(a) + ", " + iname(b) + ", " + iname(c));

    for (GenId x = 0; x < nx; ++x) {
        const std::string gx = "generator " + gname(x) + ": ";
        if (p.has_top() && !p.below(x, p.top())) fail(gx + "not below top");
        if (p.below(x, p.support(x))) fail(gx + "lies below its own support, so it is idempotent");
        for (IdemId a = 0; a < nw; ++a) {
            if (!p.below(x, a)) continue;
            if (!p.leq(p.support(x), a)) fail(gx + "below " + iname(a) + " but support is not");
            for (IdemId b = 0; b < nw; ++b) {
                if (p.leq(a, b) && !p.below(x, b))
                    fail(gx + "below relation not upward closed at " + iname(a) + " <= " + iname(b));
                if (total && p.below(x, b) && !p.below(x, p.meet(a, b)))
                    fail(gx + "below relation not closed under the meet of " + iname(a) + ", " + iname(b));
            }
        }
    }

    for (IdemId w = 0; w < nw; ++w) {
        const auto pw = p.p_set(w);
        for (GenId r : p.rays(w))
            if (!contains(pw, r)) fail("rays " + iname(w) + ": " + gname(r) + " is not in P_" + iname(w));
        for (GenId x : pw)
            if (!p.is_ray(x, w)) fail("rays " + iname(w) + ": " + gname(x) + " in P_" + iname(w) + " is not a ray");
    }

    bool red_ok = true;
    for (GenId x = 0; x < nx; ++x)
        for (IdemId w = 0; w < nw; ++w) {
            if (!p.leq(p.support(x), w)) continue;
            const std::string tag = "red(" + gname(x) + ", " + iname(w) + "): ";
            if (!p.has_red(x, w)) {
                fail(tag + "missing");
                red_ok = false;
                continue;
            }
            const Coeffs& c = p.red(x, w);
            for (const auto& [r, q] : c) {
                if (!p.is_ray(r, w)) {
                    fail(tag + gname(r) + " is not a ray of " + iname(w));
                    red_ok = false;
                }
                if (sgn(q) <= 0) fail(tag + "nonpositive coordinate");
            }
            if (p.below(x, w) && !c.empty()) fail(tag + "absorbed generator must reduce to nothing");
            if (!p.below(x, w) && c.empty()) fail(tag + "generator not below " + iname(w) + " reduces to nothing");
            if (p.is_ray(x, w) && c != Coeffs{{x, Rational(1)}}) fail(tag + "ray must reduce to itself");
        }
    if (red_ok)
        for (GenId x = 0; x < nx; ++x)
            for (IdemId v = 0; v < nw; ++v) {
                if (!p.leq(p.support(x), v)) continue;
                for (IdemId v2 = 0; v2 < nw; ++v2) {
                    if (v2 == v || !p.leq(v, v2) || !p.has_red(x, v2)) continue;
                    Coeffs composed;
                    bool defined = true;
                    for (const auto& [r, q] : p.red(x, v)) {
                        if (!p.has_red(r, v2)) {
                            defined = false;
                            break;
                        }
                        for (const auto& [s, q2] : p.red(r, v2)) composed[s] += q * q2;
                    }
                    if (!defined)
                        fail("coherence: red(" + gname(x) + ", " + iname(v) + ") cannot be reduced to " + iname(v2));
                    else if (composed != p.red(x, v2))
                        fail("coherence: red(" + gname(x) + ", " + iname(v) + ") reduced to " + iname(v2) +
                             " disagrees with red(" + gname(x) + ", " + iname(v2) + ")");
                }
            }

    for (IdemId w1 = 0; w1 < nw; ++w1)
        for (IdemId w2 = 0; w2 < nw; ++w2) {
            if (p.leq(w2, w1)) continue;
            bool witnessed = false;
            for (GenId x : p.p_set(w1))
                if (p.below(x, w2)) witnessed = true;
            if (!witnessed)
                fail("strong connectedness: P_" + iname(w1) + " \\ O_" + iname(w2) + " is empty");
        }
    return rep;
}

void require_valid(const ConePresentation& p) {
    const auto rep = validate_presentation(p);
    if (rep.ok()) return;
    std::string msg = "invalid presentation:";
    for (const auto& v : rep.violations) msg += "\n  " + v;
    throw ValidationError(msg);
}

void check_element(const ConePresentation& p, const ConeElement& y) {
    if (y.support >= p.idem_count()) throw PreconditionError("element support out of range");
    for (const auto& [x, q] : y.coeffs) {
        if (x >= p.gen_count() || !p.is_ray(x, y.support))
            throw PreconditionError("coefficient on a non-ray of " + p.idem_name(y.support));
        if (sgn(q) <= 0) throw PreconditionError("element coefficients must be strictly positive");
    }
}

ConeElement idempotent_element(const ConePresentation& p, IdemId w) {
    if (w >= p.idem_count()) throw PreconditionError("idempotent out of range");
    return ConeElement{w, {}};
}

ConeElement generator_element(const ConePresentation& p, GenId x) {
    return canonicalize(p, p.bot(), Coeffs{{x, Rational(1)}});
}

ConeElement zero_element(const ConePresentation& p) { return ConeElement{p.bot(), {}}; }

ConeElement canonicalize(const ConePresentation& p, IdemId w, const Coeffs& raw) {
    IdemId target = w;
    for (const auto& [x, q] : raw) {
        if (sgn(q) < 0) throw PreconditionError("negative coefficient in a cone sum");
        if (x >= p.gen_count()) throw PreconditionError("generator out of range");
        if (sgn(q) > 0) target = p.join(target, p.support(x));
    }
    ConeElement out{target, {}};
    for (const auto& [x, q] : raw) {
        if (sgn(q) == 0) continue;
        for (const auto& [r, c] : p.red(x, target)) out.coeffs[r] += q * c;
    }
    std::erase_if(out.coeffs, [](const auto& kv) { return sgn(kv.second) == 0; });
    return out;
}

ConeElement cone_add(const ConePresentation& p, const ConeElement& y, const ConeElement& z) {
    Coeffs raw = y.coeffs;
    for (const auto& [x, q] : z.coeffs) raw[x] += q;
    return canonicalize(p, p.join(y.support, z.support), raw);
}

ConeElement scalar_mul(const ConePresentation& p, const ExtScalar& t, const ConeElement& y) {
    if (t.is_zero()) throw PreconditionError("scalar multiplication by 0 is not defined on elements");
    if (t.is_finite()) {
        ConeElement out = y;
        for (auto& [x, q] : out.coeffs) q *= t.value();
        return out;
    }
    IdemId best = p.top();
    for (IdemId v = 0; v < p.idem_count(); ++v) {
        if (!p.leq(y.support, v)) continue;
        bool absorbs = true;
        for (const auto& [x, q] : y.coeffs) absorbs = absorbs && p.below(x, v);
        if (absorbs) best = p.meet(best, v);
    }
    for (const auto& [x, q] : y.coeffs)
        if (!p.below(x, best)) throw InvariantError("absorbing idempotents are not closed under meets");
    return ConeElement{best, {}};
}

bool cone_leq(const ConePresentation& p, const ConeElement& y, const ConeElement& z) {
    if (!p.leq(y.support, z.support)) return false;
    const ConeElement lifted = canonicalize(p, z.support, y.coeffs);
    for (const auto& [r, q] : lifted.coeffs) {
        const auto it = z.coeffs.find(r);
        if (it == z.coeffs.end() || it->second < q) return false;
    }
    return true;
}

IdemId idem_meet(const ConePresentation& p, IdemId a, IdemId b) { return p.meet(a, b); }
IdemId idem_join(const ConePresentation& p, IdemId a, IdemId b) { return p.join(a, b); }

namespace {

Rational coeff_of(const Coeffs& c, GenId x) {
    const auto it = c.find(x);
    return it == c.end() ? Rational(0) : it->second;
}

// Constraints "element (u, c) ≤ bound" for c indexed by R_u.
void add_below_constraints(const ConePresentation& p, LinearProgram& lp, IdemId u, const ConeElement& bound) {
    const auto& rays = p.rays(u);
    for (GenId r2 : p.rays(bound.support)) {
        std::vector<std::pair<std::size_t, Rational>> terms;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            const Rational c = coeff_of(p.red(rays[k], bound.support), r2);
            if (sgn(c) != 0) terms.emplace_back(k, c);
        }
        if (!terms.empty()) lp.add(terms, Relation::less_equal, coeff_of(bound.coeffs, r2));
    }
}

}  // namespace

LatticeOutcome element_meet(const ConePresentation& p, const ConeElement& y, const ConeElement& z) {
    check_element(p, y);
    check_element(p, z);
    const IdemId u = p.meet(y.support, z.support);
    const auto& rays = p.rays(u);
    LinearProgram lp;
    lp.num_vars = rays.size();
    lp.objective.assign(rays.size(), Rational(0));
    add_below_constraints(p, lp, u, y);
    add_below_constraints(p, lp, u, z);

    RatVector best(rays.size());
    for (std::size_t k = 0; k < rays.size(); ++k) {
        LinearProgram one = lp;
        one.objective[k] = 1;
        const LpSolution sol = maximize(one);
        if (sol.status != LpStatus::optimal)
            return {std::nullopt, "meet: coordinate " + p.gen_name(rays[k]) + " has no finite maximum"};
        best[k] = sol.value;
    }
    if (!satisfies(lp, best))
        return {std::nullopt, "meet: coordinatewise maxima do not form a lower bound; no greatest element"};
    Coeffs raw;
    for (std::size_t k = 0; k < rays.size(); ++k)
        if (sgn(best[k]) > 0) raw[rays[k]] = best[k];
    ConeElement m = canonicalize(p, u, raw);
    if (!cone_leq(p, m, y) || !cone_leq(p, m, z))
        return {std::nullopt, "meet: candidate is not below both arguments"};

    // Witnesses: idempotent lower bounds and maximal multiples of generators.
    for (IdemId v = 0; v < p.idem_count(); ++v) {
        const ConeElement e{v, {}};
        if (cone_leq(p, e, y) && cone_leq(p, e, z) && !cone_leq(p, e, m))
            return {std::nullopt, "meet: idempotent lower bound " + p.idem_name(v) + " escapes the candidate"};
    }
    for (GenId x = 0; x < p.gen_count(); ++x) {
        const ConeElement gx = generator_element(p, x);
        if (!p.leq(gx.support, u)) continue;
        LinearProgram scale;
        scale.num_vars = 1;
        scale.objective = {Rational(1)};
        for (const ConeElement* bound : {&y, &z}) {
            const ConeElement lifted = canonicalize(p, bound->support, gx.coeffs);
            for (const auto& [r, q] : lifted.coeffs) scale.add({{0, q}}, Relation::less_equal, coeff_of(bound->coeffs, r));
        }
        const LpSolution sol = maximize(scale);
        if (sol.status != LpStatus::optimal || sgn(sol.value) == 0) continue;
        const ConeElement w = scalar_mul(p, ExtScalar(sol.value), gx);
        if (!cone_leq(p, w, m))
            return {std::nullopt, "meet: scaled generator " + p.gen_name(x) + " escapes the candidate"};
    }
    return {m, ""};
}

LatticeOutcome element_join(const ConePresentation& p, const ConeElement& y, const ConeElement& z) {
    check_element(p, y);
    check_element(p, z);
    const IdemId u0 = p.join(y.support, z.support);
    std::vector<ConeElement> candidates;
    for (IdemId u = 0; u < p.idem_count(); ++u) {
        if (!p.leq(u0, u)) continue;
        const ConeElement ly = canonicalize(p, u, y.coeffs);
        const ConeElement lz = canonicalize(p, u, z.coeffs);
        ConeElement j{u, ly.coeffs};
        for (const auto& [r, q] : lz.coeffs)
            if (coeff_of(j.coeffs, r) < q) j.coeffs[r] = q;
        candidates.push_back(std::move(j));
    }
    for (const auto& c : candidates) {
        bool least = cone_leq(p, y, c) && cone_leq(p, z, c);
        for (const auto& other : candidates) least = least && cone_leq(p, c, other);
        if (least) return {c, ""};
    }
    return {std::nullopt, "join: no least upper bound among the candidate supports"};
}

std::string to_string(const ConePresentation& p, const ConeElement& y) {
    std::ostringstream os;
    os << "(" << p.idem_name(y.support) << ", {";
    bool first = true;
    for (const auto& [x, q] : y.coeffs) {
        os << (first ? "" : ", ") << p.gen_name(x) << ": " << to_string(q);
        first = false;
    }
    os << "})";
    return os.str();
}

}  // namespace ecc
