#include "ecc/riesz_space.hpp"

#include "ecc/errors.hpp"

#include <sstream>

namespace ecc {

namespace {

void require_length(const ConePresentation& p, const RieszVector& f) {
    if (f.size() != p.gen_count()) throw PreconditionError("vector length differs from the generator count");
}

bool positive_with_support(const ConePresentation& p, const RieszVector& f, IdemId w) {
    for (GenId x = 0; x < p.gen_count(); ++x) {
        if (p.below(x, w)) {
            if (sgn(f[x]) != 0) return false;
        } else if (p.leq(p.support(x), w) && sgn(f[x]) <= 0) {
            return false;
        }
    }
    return true;
}

// Admissible values of one coordinate of h.
struct Window {
    std::optional<Rational> fixed;
    std::optional<Rational> lower;  // strict
    std::optional<Rational> upper;  // strict
    bool empty = false;

    void pin(const Rational& v) {
        if (fixed && *fixed != v) empty = true;
        fixed = v;
    }
    void above(const Rational& v) {
        if (!lower || v > *lower) lower = v;
    }
    void beneath(const Rational& v) {
        if (!upper || v < *upper) upper = v;
    }
    [[nodiscard]] bool feasible() const {
        if (empty) return false;
        if (fixed) return (!lower || *fixed > *lower) && (!upper || *fixed < *upper);
        return !lower || !upper || *lower < *upper;
    }
    [[nodiscard]] Rational pick(const Rational& fallback) const {
        if (fixed) return *fixed;
        if (lower && upper) return (*lower + *upper) / 2;
        if (lower) return *lower + 1;
        if (upper) return *upper - 1;
        return fallback;
    }
};

}  // namespace

SupportSets support_sets(const ConePresentation& p, IdemId w) { return {p.o_set(w), p.p_set(w), p.p_tilde_set(w)}; }

std::optional<IdemId> is_positive(const ConePresentation& p, const RieszVector& f) {
    require_length(p, f);
    for (IdemId w = 0; w < p.idem_count(); ++w)
        if (positive_with_support(p, f, w)) return w;
    return std::nullopt;
}

bool riesz_leq(const ConePresentation& p, const RieszVector& f, const RieszVector& g) {
    return is_positive(p, riesz_sub(g, f)).has_value();
}

RieszVector riesz_add(const RieszVector& f, const RieszVector& g) {
    if (f.size() != g.size()) throw PreconditionError("vector length mismatch");
    RieszVector out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] + g[i];
    return out;
}

RieszVector riesz_sub(const RieszVector& f, const RieszVector& g) {
    if (f.size() != g.size()) throw PreconditionError("vector length mismatch");
    RieszVector out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] - g[i];
    return out;
}

std::optional<Interpolant> interpolate(const ConePresentation& p, const RieszVector& f1, const RieszVector& f2,
                                       const RieszVector& g1, const RieszVector& g2) {
    for (const auto* v : {&f1, &f2, &g1, &g2}) require_length(p, *v);
    for (const auto* f : {&f1, &f2})
        for (const auto* g : {&g1, &g2})
            if (!riesz_leq(p, *f, *g)) throw PreconditionError("interpolation requires f_i <= g_j for all i, j");

    const std::size_t nw = p.idem_count();
    const std::size_t nx = p.gen_count();
    const std::array<const RieszVector*, 4> data{&f1, &f2, &g1, &g2};
    std::array<IdemId, 4> w{};
    for (w[0] = 0; w[0] < nw; ++w[0])
        for (w[1] = 0; w[1] < nw; ++w[1])
            for (w[2] = 0; w[2] < nw; ++w[2])
                for (w[3] = 0; w[3] < nw; ++w[3]) {
                    Interpolant out{RieszVector(nx), w};
                    bool ok = true;
                    for (GenId x = 0; x < nx && ok; ++x) {
                        Window win;
                        for (std::size_t k = 0; k < 4; ++k) {
                            const Rational& v = (*data[k])[x];
                            const bool lower_side = k < 2;
                            if (p.below(x, w[k]))
                                win.pin(v);
                            else if (p.leq(p.support(x), w[k]))
                                lower_side ? win.above(v) : win.beneath(v);
                        }
                        ok = win.feasible();
                        if (ok) {
                            const Rational lo = std::max(f1[x], f2[x]);
                            const Rational hi = std::min(g1[x], g2[x]);
                            out.h[x] = win.pick((lo + hi) / 2);
                        }
                    }
                    if (!ok) continue;
                    for (std::size_t k = 0; k < 4; ++k) {
                        const RieszVector d = k < 2 ? riesz_sub(out.h, *data[k]) : riesz_sub(*data[k], out.h);
                        if (!positive_with_support(p, d, w[k]))
                            throw InvariantError("interpolate: chosen vector misses its support certificate");
                    }
                    return out;
                }
    return std::nullopt;
}

ExtScalar pairing(const ConePresentation& p, const ConeElement& y, const RieszVector& f) {
    check_element(p, y);
    const auto s = is_positive(p, f);
    if (!s) throw PreconditionError("pairing requires a positive vector");
    if (!p.leq(y.support, *s)) return ExtScalar::infinity();
    Rational sum;
    for (const auto& [x, q] : y.coeffs) sum += q * f[x];
    return ExtScalar(sum);
}

ConeElement reconstruct(const ConePresentation& p, IdemId w, const Coeffs& lambda_values) {
    const auto pw = p.p_set(w);
    for (const auto& [x, q] : lambda_values) {
        if (!std::binary_search(pw.begin(), pw.end(), x))
            throw PreconditionError("functional values must be indexed by P_" + p.idem_name(w));
        if (sgn(q) < 0) throw PreconditionError("functional values must be nonnegative");
    }
    return canonicalize(p, w, lambda_values);
}

std::string to_string(const ConePresentation& p, const RieszVector& f) {
    std::ostringstream os;
    os << "{";
    for (GenId x = 0; x < f.size(); ++x) os << (x ? ", " : "") << p.gen_name(x) << ": " << to_string(f[x]);
    os << "}";
    return os.str();
}

}  // namespace ecc
