/**
 * @file fixtures.hpp
 * @brief Bundled presentations and Bratteli diagrams with hand-derived oracles.
 */
#pragma once

#include "ecc/fg_cone.hpp"
#include "ecc/limits.hpp"

#include <string>
#include <vector>

namespace ecc {

/// W = {bot, top}, X = {u}; the cone is [0,∞].
ConeSpec fixture_e1();
/// W = {0,1}², X = {e1, e2}; the cone is [0,∞]².
ConeSpec fixture_e2();
/// Chain bot < w < top with one ray per non-top stratum.
ConeSpec fixture_elex();

struct NamedFixture {
    std::string name;
    ConeSpec spec;
};

/// E1, E2 and Elex in that order.
std::vector<NamedFixture> cone_fixtures();

/// Eight levels of one vertex with multiplicities 2^k and connecting matrix [2].
BratteliDiagram fixture_car();
/// Two disjoint vertices per level joined by identity matrices.
BratteliDiagram fixture_two_component(std::size_t levels = 3);

}  // namespace ecc
