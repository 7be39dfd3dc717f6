#include "ecc/sampling.hpp"

namespace ecc {

namespace {

Rational positive_dyadic(Rng& rng) {
    Rational q;
    do q = rng.dyadic(32, 2);
    while (sgn(q) == 0);
    return q;
}

}  // namespace

RawSum random_raw_sum(const ConePresentation& p, Rng& rng) {
    RawSum s;
    s.base = static_cast<IdemId>(rng.uniform(0, static_cast<std::int64_t>(p.idem_count()) - 1));
    if (rng.chance(1, 2)) s.base = p.bot();
    for (GenId x = 0; x < p.gen_count(); ++x)
        if (rng.chance(2, 3)) s.terms[x] = rng.dyadic(16, 2);
    return s;
}

ConeElement random_element(const ConePresentation& p, Rng& rng) {
    const RawSum s = random_raw_sum(p, rng);
    return canonicalize(p, s.base, s.terms);
}

LscFn random_affine(const ConePresentation& p, Rng& rng) {
    LscFn f;
    f.support = static_cast<IdemId>(rng.uniform(0, static_cast<std::int64_t>(p.idem_count()) - 1));
    if (rng.chance(1, 2)) f.support = p.bot();
    for (GenId r : p.rays(f.support)) f.values[r] = ExtScalar(positive_dyadic(rng));
    return f;
}

LscFn random_lsc(const ConePresentation& p, Rng& rng) {
    LscFn f = random_affine(p, rng);
    for (auto& [r, v] : f.values)
        if (rng.chance(1, 4)) v = ExtScalar::infinity();
    return f;
}

LscFn random_lhd_below(const ConePresentation& p, Rng& rng, const LscFn& g) {
    std::vector<IdemId> above;
    for (IdemId v = 0; v < p.idem_count(); ++v)
        if (p.leq(g.support, v)) above.push_back(v);
    for (int attempt = 0; attempt < 16; ++attempt) {
        LscFn f;
        f.support = above[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(above.size()) - 1))];
        for (GenId r : p.rays(f.support)) {
            const ExtScalar gr = eval_generator(p, g, r);
            f.values[r] = ExtScalar(gr.is_infinite() ? positive_dyadic(rng) : gr.value() * (Rational(rng.uniform(1, 3)) / 4));
        }
        if (afun_lhd(p, f, g)) return f;
    }
    return zero_function(p);
}

RieszVector random_positive(const ConePresentation& p, Rng& rng, IdemId w) {
    RieszVector f(p.gen_count());
    for (GenId x = 0; x < p.gen_count(); ++x) {
        if (p.below(x, w)) continue;
        if (p.leq(p.support(x), w))
            f[x] = positive_dyadic(rng);
        else
            f[x] = rng.dyadic(32, 2) - 4;
    }
    return f;
}

RieszVector random_vector(const ConePresentation& p, Rng& rng) {
    RieszVector f(p.gen_count());
    for (auto& c : f) c = rng.dyadic(32, 2) - 4;
    return f;
}

ExtVector random_ext_vector(Rng& rng, std::size_t n) {
    ExtVector v(n);
    for (auto& c : v) c = rng.chance(1, 8) ? ExtScalar::infinity() : ExtScalar(rng.dyadic(16, 2));
    return v;
}

}  // namespace ecc
