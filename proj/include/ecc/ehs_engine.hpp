/**
 * @file ehs_engine.hpp
 * @brief Factoring Cu-morphisms [0,∞]^n → Lsc(C) through integer matrices.
 *
 * A morphism φ is given by the affine images f_i = φ(E_i) of the basis
 * vectors. core_triangle realizes the degree-descent construction: for
 * integer x, y with φ(x) ≪ φ(y) it returns an integer matrix Q and a morphism
 * ψ with ψ∘Q = φ and Qx ≤ Qy. triangle sandwiches rational pairs so that the
 * factorization turns every relation φ(x) ≪ φ(y) into Qx ≪ Qy, and
 * build_inductive_system chains such factorizations into stages.
 */
#pragma once

#include "ecc/afun.hpp"
#include "ecc/limits.hpp"

#include <string>
#include <vector>

namespace ecc {

struct CuMorphism {
    std::vector<LscFn> gens;
    friend bool operator==(const CuMorphism&, const CuMorphism&) = default;
};

/// Every generator image must be a valid affine function.
void check_morphism(const ConePresentation& p, const CuMorphism& phi);
/// Σ x_i f_i for a finite nonnegative vector x.
LscFn morphism_apply(const ConePresentation& p, const CuMorphism& phi, const RatVector& x);
/// As above with ∞ entries mapped through infty_scale.
LscFn morphism_apply(const ConePresentation& p, const CuMorphism& phi, const ExtVector& x);

using IntVector = std::vector<Integer>;

struct Degree {
    Integer M;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::size_t n = 0;
};

bool operator==(const Degree& a, const Degree& b);
bool operator<(const Degree& a, const Degree& b);
std::string to_string(const Degree& d);

/// (M, n1, n2, n) with M = max |x_i - y_i| and n1, n2 counting where x - y
/// and y - x attain M.
Degree degree(const IntVector& x, const IntVector& y);

struct DescentStep {
    Degree degree;
    std::string branch;
};

/// f + h ≪ g + h' was used to conclude f ≪ g.
struct CancellationRecord {
    LscFn f;
    LscFn h;
    LscFn g;
    LscFn h_prime;
};

struct Factorization {
    Matrix Q;         ///< N × n, nonnegative integers
    CuMorphism psi;   ///< N generator images
    std::vector<DescentStep> log;
    std::vector<std::size_t> segments;  ///< start index in log of each descent run
    std::vector<CancellationRecord> cancellations;
};

struct EngineOptions {
    std::size_t step_budget = 1'000'000;
};

/// Requires φ(x) ≪ φ(y) for nonnegative integer vectors x, y.
Factorization core_triangle(const ConePresentation& p, const CuMorphism& phi, const IntVector& x,
                            const IntVector& y, const EngineOptions& options = {});

/// Factorization with Qx ≪ Qy for every pair of F with φ(x) ≪ φ(y).
Factorization triangle(const ConePresentation& p, const CuMorphism& phi, const std::vector<RatVector>& F,
                       const EngineOptions& options = {});

/// ψ∘Q = φ, checked exactly on every basis vector.
bool composes_to(const ConePresentation& p, const Factorization& fact, const CuMorphism& phi);

/// One line per descent step: "<M> <n1> <n2> <n> <branch>".
std::string descent_log(const Factorization& fact);

/// Stages over [0,∞]^{n_k} with generator images psi[k]; psi[k+1]∘steps[k] = psi[k].
struct CuSystem {
    System system;
    std::vector<CuMorphism> psi;
};

/// Dyadic probe grid {0, 1/2, ..., k}^n, capped at `cap` points chosen in a
/// fixed hash order when the full grid is larger.
std::vector<RatVector> probe_set(std::size_t k, std::size_t n, std::size_t cap);

/**
 * @brief Stage 0 is [0,∞]^{|sample|} with ψ(E_i) = sample[i]; round k applies
 * triangle to the probe set A_k of the previous stage.
 */
CuSystem build_inductive_system(const ConePresentation& p, const std::vector<LscFn>& sample, std::size_t rounds,
                                std::size_t probe_cap = 4, const EngineOptions& options = {});

/// Exact commutation psi[k+1]∘steps[k] = psi[k] at every stage.
bool system_commutes(const ConePresentation& p, const CuSystem& s);

}  // namespace ecc
