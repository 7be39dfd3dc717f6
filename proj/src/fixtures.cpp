/**
 * @file fixtures.cpp
 * @brief Bundled presentations and diagrams.
 */
#include "ecc/fixtures.hpp"

namespace ecc {

// [0,∞] = {t·u}. Idempotents 0 (bot) and ∞ (top). u absorbs only 0, so
// supp(u) = bot; u + ∞ = ∞, so u ≤ top. C_bot = (0,∞)·u, C_top = {∞}.
ConeSpec fixture_e1() {
    ConeSpec s;
    s.description = "[0,inf]: one generator u of support bot, absorbed by top";
    s.idempotents = {"bot", "top"};
    s.order = {{"bot", "top"}};
    s.generators = {{"u", "bot", {"top"}}};
    s.rays = {{"bot", {"u"}}};
    return s;
}

// [0,∞]² with e1 = (1,0), e2 = (0,1). Idempotents are {0,∞}²: bot = (0,0),
// p1 = (∞,0), p2 = (0,∞), top = (∞,∞). e1 is absorbed by p1 and top; e2 by
// p2 and top. Strata: C_bot has rays e1, e2; C_p1 = p1 + (0,∞)e2 has ray e2;
// C_p2 has ray e1; C_top = {top}. Reductions: e1 + p1 = p1 gives {}, and
// e1 + p2 = p2 + e1 gives {e1: 1}; symmetrically for e2.
ConeSpec fixture_e2() {
    ConeSpec s;
    s.description = "[0,inf]^2: e1 absorbed by p1, e2 absorbed by p2, both by top";
    s.idempotents = {"bot", "p1", "p2", "top"};
    s.order = {{"bot", "p1"}, {"bot", "p2"}, {"bot", "top"}, {"p1", "top"}, {"p2", "top"}};
    s.generators = {{"e1", "bot", {"p1", "top"}}, {"e2", "bot", {"p2", "top"}}};
    s.rays = {{"bot", {"e1", "e2"}}, {"p1", {"e2"}}, {"p2", {"e1"}}};
    s.reductions = {{"e1", "p1", {}},
                    {"e1", "p2", {{"e1", Rational(1)}}},
                    {"e2", "p2", {}},
                    {"e2", "p1", {{"e2", Rational(1)}}}};
    return s;
}

// Lexicographic chain: x1 of support bot absorbed by w, x2 of support w
// absorbed by top. C_bot = (0,∞)x1, C_w = w + (0,∞)x2, C_top = {top}.
// x1 + w = w gives red(x1, w) = {}; x2 is a ray at w, so red(x2, w) = {x2: 1}.
// Strong connectedness at (w, top) is witnessed by x2 ∈ P_w \ O_top.
ConeSpec fixture_elex() {
    ConeSpec s;
    s.description = "chain bot < w < top: x1 of support bot below w, x2 of support w below top";
    s.idempotents = {"bot", "top", "w"};
    s.order = {{"bot", "w"}, {"bot", "top"}, {"w", "top"}};
    s.generators = {{"x1", "bot", {"w", "top"}}, {"x2", "w", {"top"}}};
    s.rays = {{"bot", {"x1"}}, {"w", {"x2"}}};
    s.reductions = {{"x1", "w", {}}, {"x2", "w", {{"x2", Rational(1)}}}};
    return s;
}

std::vector<NamedFixture> cone_fixtures() {
    return {{"E1", fixture_e1()}, {"E2", fixture_e2()}, {"Elex", fixture_elex()}};
}

// K_0 of the CAR algebra: Z → Z → ... multiplying by 2; level k is M_{2^k}.
BratteliDiagram fixture_car() {
    BratteliDiagram d;
    Integer mult = 1;
    for (int k = 0; k < 8; ++k) {
        d.levels.push_back({mult});
        mult *= 2;
    }
    Matrix two(1, 1);
    two.at(0, 0) = 2;
    d.matrices.assign(7, two);
    return d;
}

// C ⊕ C at every level. Order ideals of Z² are {0}, Z⊕0, 0⊕Z, Z², so the
// idempotent count at every depth is 4.
BratteliDiagram fixture_two_component(std::size_t levels) {
    BratteliDiagram d;
    d.levels.assign(levels, {Integer(1), Integer(1)});
    d.matrices.assign(levels - 1, Matrix::identity(2));
    return d;
}

}  // namespace ecc
