/**
 * @file riesz_space.hpp
 * @brief The ordered vector space V_C of rational functions on the generators.
 *
 * A vector f : X → Q is positive with support w when f vanishes on every
 * generator below w and is strictly positive on P_w; the zero vector has
 * support top. Pairing a positive vector with a cone element realizes the
 * duality between C and the positive functionals on V_C.
 */
#pragma once

#include "ecc/fg_cone.hpp"

#include <array>
#include <optional>

namespace ecc {

/// Indexed by GenId; length equals the generator count.
using RieszVector = RatVector;

struct SupportSets {
    std::vector<GenId> o;        ///< O_w
    std::vector<GenId> p;        ///< P_w
    std::vector<GenId> p_tilde;  ///< P̃_w
};

SupportSets support_sets(const ConePresentation& p, IdemId w);

/// The support idempotent of f when f is positive or zero, nothing otherwise.
std::optional<IdemId> is_positive(const ConePresentation& p, const RieszVector& f);
/// f ≤ g: the difference g - f is positive or zero.
bool riesz_leq(const ConePresentation& p, const RieszVector& f, const RieszVector& g);

RieszVector riesz_add(const RieszVector& f, const RieszVector& g);
RieszVector riesz_sub(const RieszVector& f, const RieszVector& g);

struct Interpolant {
    RieszVector h;
    /// Supports of h - f1, h - f2, g1 - h, g2 - h.
    std::array<IdemId, 4> supports{};
};

/**
 * @brief Finds h with f1, f2 ≤ h ≤ g1, g2. Requires f_i ≤ g_j for all i, j.
 * Returns nothing only if no support quadruple admits a solution.
 */
std::optional<Interpolant> interpolate(const ConePresentation& p, const RieszVector& f1, const RieszVector& f2,
                                       const RieszVector& g1, const RieszVector& g2);

/// Σ α_x f(x) over the canonical form of y when support(y) ≤ support(f), else ∞.
ExtScalar pairing(const ConePresentation& p, const ConeElement& y, const RieszVector& f);

/// Element with support w whose pairing reproduces the given values on P_w.
ConeElement reconstruct(const ConePresentation& p, IdemId w, const Coeffs& lambda_values);

std::string to_string(const ConePresentation& p, const RieszVector& f);

}  // namespace ecc
