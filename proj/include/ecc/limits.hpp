/**
 * @file limits.hpp
 * @brief Chains of powers of [0,∞] (or of Z) joined by nonnegative matrices,
 * the transposition duality, finite-depth threads and Bratteli diagrams.
 *
 * A system is a finite chain of stages indices[0], indices[1], ... where
 * steps[t] maps stage t to stage t+1 (rows = dims[t+1], cols = dims[t]).
 * An inductive system runs toward larger stages; dualizing reverses the
 * chain and transposes every step, giving a projective system whose maps run
 * from later stages back to earlier ones.
 */
#pragma once

#include "ecc/matrix.hpp"

#include <map>
#include <string>

namespace ecc {

enum class Direction { inductive, projective };

struct System {
    Direction direction = Direction::inductive;
    std::vector<std::string> indices;
    std::vector<std::size_t> dims;
    std::vector<Matrix> steps;

    /// Composite map from position i to position j (i ≤ j).
    [[nodiscard]] Matrix connect(std::size_t i, std::size_t j) const;
    [[nodiscard]] std::size_t position(const std::string& index) const;
    friend bool operator==(const System&, const System&) = default;
};

/// Shapes chain correctly and entries are finite and nonnegative.
void check_system(const System& s);

/// Matrix action on [0,∞]^n with 0·∞ = 0.
ExtVector mat_apply(const Matrix& m, const ExtVector& v);

/// Reverses the chain and transposes every step.
System dualize(const System& s);

/// The functional on [0,∞]^n with generator values table, as a vector.
ExtVector functional_iso(const ExtVector& table, std::size_t n);
/// 0·∞-aware dot product of a functional table with v.
ExtScalar functional_eval(const ExtVector& table, const ExtVector& v);

/**
 * @brief Compatibility of a finite thread: for assigned positions i < j,
 * x_j = connect(i, j)·x_i. The assigned indices must form an initial
 * segment of the chain.
 */
bool thread_eval(const System& s, const std::map<std::string, ExtVector>& assignments);

struct BratteliDiagram {
    std::vector<std::vector<Integer>> levels;  ///< vertex multiplicities per level
    std::vector<Matrix> matrices;              ///< matrices[k]: level k -> level k+1
};

/// Throws ValidationError for malformed diagrams.
void check_diagram(const BratteliDiagram& d);

struct BratteliImport {
    System groups;  ///< Z^{n_k} with the incidence matrices
    System cones;   ///< [0,∞]^{n_k} with transposed maps
    std::vector<Integer> idempotent_counts;  ///< per stage of the cone system
};

/// Uses the first depth levels (depth ≤ number of levels).
BratteliImport bratteli_import(const BratteliDiagram& d, std::size_t depth);

/// Idempotent threads of the cone system truncated after stage k.
Integer count_idempotent_threads(const System& cones, std::size_t k);

}  // namespace ecc
