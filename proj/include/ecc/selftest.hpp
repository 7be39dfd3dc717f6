/**
 * @file selftest.hpp
 * @brief Property suites over the bundled fixtures with per-instance seeds.
 *
 * Every instance draws from its own generator seeded by instance_seed(), so a
 * failure is reproduced by seeding Rng with the reported value.
 */
#pragma once

#include "ecc/fixtures.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ecc {

struct SuiteResult {
    std::string name;
    std::string fixture;  ///< fixture name, or "-" for fixture-free suites
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t vacuous = 0;  ///< instances whose hypothesis did not hold
    std::vector<std::uint64_t> failing_seeds;  ///< at most the first eight
    std::string first_failure;
};

struct SelftestOptions {
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    std::vector<NamedFixture> fixtures = cone_fixtures();
};

struct SelftestReport {
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::vector<SuiteResult> suites;
    [[nodiscard]] bool ok() const;
};

/// Seed of instance `index` of `suite` on fixture position `fixture`.
std::uint64_t instance_seed(std::uint64_t seed, std::string_view suite, std::size_t fixture, std::size_t index);

/// Throws ValidationError when a fixture is not a valid presentation.
SelftestReport run_selftest(const SelftestOptions& options = {});

/// One line per suite: "<name> <fixture> passed=<n> failed=<n> vacuous=<n>".
std::string format_report(const SelftestReport& report);

}  // namespace ecc
