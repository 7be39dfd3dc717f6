/**
 * @file roundtrip.hpp
 * @brief Duality check: pairings read through a dualized system against direct evaluation.
 *
 * A sampled element y determines at every stage k the table
 * t_k(i) = ψ_k(E_i)(y). The tables form a thread of the dual system, and the
 * functional they define on a stage vector v must equal ψ_k(v)(y).
 */
#pragma once

#include "ecc/ehs_engine.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ecc {

/// The system is built from sample_size affine functions drawn with
/// sample_seed; the sampled elements and stage vectors are drawn with seed.
struct RoundtripOptions {
    std::size_t sample_size = 3;
    std::size_t rounds = 2;
    std::size_t probe_cap = 4;
    std::size_t pairings = 100;
    std::uint64_t sample_seed = 2;
    std::uint64_t seed = 1;
};

struct RoundtripReport {
    std::vector<std::size_t> dims;  ///< stage dimensions of the inductive system
    std::size_t compared = 0;
    std::size_t threads_checked = 0;
    std::vector<std::string> mismatches;
    [[nodiscard]] bool ok() const { return mismatches.empty(); }
};

RoundtripReport roundtrip_check(const ConePresentation& p, const RoundtripOptions& options = {});

}  // namespace ecc
