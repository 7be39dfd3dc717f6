#include "ecc/random.hpp"

#include "ecc/errors.hpp"

namespace ecc {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw PreconditionError("empty sampling range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r = engine_();
    while (r >= limit) r = engine_();
    return lo + static_cast<std::int64_t>(r % span);
}

bool Rng::chance(std::uint64_t num, std::uint64_t den) {
    return static_cast<std::uint64_t>(uniform(0, static_cast<std::int64_t>(den) - 1)) < num;
}

Rational Rng::dyadic(std::int64_t max_num, unsigned max_exp) {
    const auto k = uniform(0, max_num);
    const auto e = static_cast<unsigned>(uniform(0, max_exp));
    Rational q(Integer(k), Integer(1) << e);
    q.canonicalize();
    return q;
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31U);
}

}  // namespace ecc
