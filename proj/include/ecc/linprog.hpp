/**
 * @file linprog.hpp
 * @brief Exact rational linear programming (two-phase simplex, Bland's rule).
 *
 * Variables are nonnegative. The solver never rounds: every pivot is carried
 * out in GMP rationals, so reported optima and certificates are exact.
 */
#pragma once

#include "ecc/xreal.hpp"

#include <vector>

namespace ecc {

enum class Relation { less_equal, greater_equal, equal };

struct LinearConstraint {
    RatVector coeffs;
    Relation rel = Relation::less_equal;
    Rational rhs;
};

/// maximize objective·x subject to constraints and x >= 0.
struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<LinearConstraint> constraints;
    RatVector objective;

    /// Appends a constraint given as (variable, coefficient) terms.
    void add(const std::vector<std::pair<std::size_t, Rational>>& terms, Relation rel, const Rational& rhs);
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Rational value;
    RatVector x;
};

LpSolution maximize(const LinearProgram& lp);

/// True iff x satisfies every constraint of lp exactly (and x >= 0).
bool satisfies(const LinearProgram& lp, const RatVector& x);

}  // namespace ecc
