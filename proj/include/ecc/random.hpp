/**
 * @file random.hpp
 * @brief Portable deterministic sampling.
 *
 * Distribution objects of the standard library are implementation-defined,
 * so bounded draws are derived here from the raw mt19937_64 stream.
 */
#pragma once

#include "ecc/xreal.hpp"

#include <cstdint>
#include <random>

namespace ecc {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);
    /// True with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den);
    /// Dyadic rational k / 2^e with k ∈ [0, max_num] and e ∈ [0, max_exp].
    Rational dyadic(std::int64_t max_num, unsigned max_exp);
    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used for hash-ordered deterministic selections.
std::uint64_t mix64(std::uint64_t x);

}  // namespace ecc
