#include "ecc/linprog.hpp"

#include "ecc/errors.hpp"

#include <limits>

namespace ecc {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Tableau {
    std::vector<RatVector> rows;  // coefficient columns followed by the rhs
    std::vector<std::size_t> basis;
    RatVector reduced;            // reduced costs of the current objective
    std::size_t cols = 0;

    Rational& rhs(std::size_t i) { return rows[i][cols]; }

    void pivot(std::size_t r, std::size_t c) {
        const Rational p = rows[r][c];
        for (auto& v : rows[r]) v /= p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || sgn(rows[i][c]) == 0) continue;
            const Rational f = rows[i][c];
            for (std::size_t j = 0; j <= cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        if (sgn(reduced[c]) != 0) {
            const Rational f = reduced[c];
            for (std::size_t j = 0; j <= cols; ++j) reduced[j] -= f * rows[r][j];
        }
        basis[r] = c;
    }

    void load_objective(const RatVector& cost) {
        reduced.assign(cols + 1, Rational(0));
        for (std::size_t j = 0; j < cols; ++j) reduced[j] = cost[j];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Rational cb = cost[basis[i]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j <= cols; ++j) reduced[j] -= cb * rows[i][j];
        }
    }

    // Returns false when the objective is unbounded on the allowed columns.
    bool optimize(const std::vector<bool>& allowed) {
        while (true) {
            std::size_t enter = npos;
            for (std::size_t j = 0; j < cols; ++j)
                if (allowed[j] && sgn(reduced[j]) > 0) {
                    enter = j;
                    break;
                }
            if (enter == npos) return true;
            std::size_t leave = npos;
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (sgn(rows[i][enter]) <= 0) continue;
                Rational ratio = rows[i][cols] / rows[i][enter];
                if (leave == npos || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == npos) return false;
            pivot(leave, enter);
        }
    }
};

Rational dot(const RatVector& a, const RatVector& x) {
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    return s;
}

}  // namespace

void LinearProgram::add(const std::vector<std::pair<std::size_t, Rational>>& terms, Relation rel,
                        const Rational& rhs) {
    LinearConstraint c;
    c.coeffs.assign(num_vars, Rational(0));
    for (const auto& [var, coeff] : terms) {
        if (var >= num_vars) throw PreconditionError("constraint references unknown variable");
        c.coeffs[var] += coeff;
    }
    c.rel = rel;
    c.rhs = rhs;
    constraints.push_back(std::move(c));
}

LpSolution maximize(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars;
    const std::size_t m = lp.constraints.size();
    if (lp.objective.size() != n) throw PreconditionError("objective length mismatch");

    std::size_t slack_count = 0;
    std::size_t art_count = 0;
    for (const auto& c : lp.constraints) {
        if (c.coeffs.size() != n) throw PreconditionError("constraint length mismatch");
        const bool flip = sgn(c.rhs) < 0;
        Relation rel = c.rel;
        if (flip && rel != Relation::equal)
            rel = rel == Relation::less_equal ? Relation::greater_equal : Relation::less_equal;
        if (rel != Relation::equal) ++slack_count;
        if (rel != Relation::less_equal) ++art_count;
    }

    Tableau t;
    t.cols = n + slack_count + art_count;
    t.rows.assign(m, RatVector(t.cols + 1, Rational(0)));
    t.basis.assign(m, npos);
    std::size_t next_slack = n;
    std::size_t next_art = n + slack_count;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        const bool flip = sgn(c.rhs) < 0;
        Relation rel = c.rel;
        if (flip && rel != Relation::equal)
            rel = rel == Relation::less_equal ? Relation::greater_equal : Relation::less_equal;
        for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = flip ? Rational(-c.coeffs[j]) : c.coeffs[j];
        t.rhs(i) = flip ? Rational(-c.rhs) : c.rhs;
        if (rel == Relation::less_equal) {
            t.rows[i][next_slack] = 1;
            t.basis[i] = next_slack++;
        } else {
            if (rel == Relation::greater_equal) t.rows[i][next_slack++] = -1;
            t.rows[i][next_art] = 1;
            t.basis[i] = next_art++;
        }
    }

    std::vector<bool> allowed(t.cols, true);
    if (art_count > 0) {
        RatVector phase1(t.cols, Rational(0));
        for (std::size_t j = n + slack_count; j < t.cols; ++j) phase1[j] = -1;
        t.load_objective(phase1);
        t.optimize(allowed);
        if (sgn(t.reduced[t.cols]) != 0) return {};  // residual artificial mass
        for (std::size_t i = 0; i < t.rows.size();) {
            if (t.basis[i] < n + slack_count) {
                ++i;
                continue;
            }
            std::size_t col = npos;
            for (std::size_t j = 0; j < n + slack_count; ++j)
                if (sgn(t.rows[i][j]) != 0) {
                    col = j;
                    break;
                }
            if (col == npos) {
                t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
                t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            t.pivot(i, col);
            ++i;
        }
        for (std::size_t j = n + slack_count; j < t.cols; ++j) allowed[j] = false;
    }

    RatVector cost(t.cols, Rational(0));
    for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
    t.load_objective(cost);
    LpSolution sol;
    if (!t.optimize(allowed)) {
        sol.status = LpStatus::unbounded;
        return sol;
    }
    sol.status = LpStatus::optimal;
    sol.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (t.basis[i] < n) sol.x[t.basis[i]] = t.rhs(i);
    sol.value = dot(lp.objective, sol.x);
    if (!satisfies(lp, sol.x)) throw InvariantError("simplex returned an infeasible point");
    return sol;
}

bool satisfies(const LinearProgram& lp, const RatVector& x) {
    if (x.size() != lp.num_vars) return false;
    for (const auto& v : x)
        if (sgn(v) < 0) return false;
    for (const auto& c : lp.constraints) {
        const Rational lhs = dot(c.coeffs, x);
        switch (c.rel) {
            case Relation::less_equal:
                if (lhs > c.rhs) return false;
                break;
            case Relation::greater_equal:
                if (lhs < c.rhs) return false;
                break;
            case Relation::equal:
                if (lhs != c.rhs) return false;
                break;
        }
    }
    return true;
}

}  // namespace ecc
