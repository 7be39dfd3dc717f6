/**
 * @file sampling.hpp
 * @brief Seeded random instances over a presentation.
 */
#pragma once

#include "ecc/afun.hpp"
#include "ecc/random.hpp"
#include "ecc/riesz_space.hpp"

namespace ecc {

struct RawSum {
    IdemId base = 0;
    Coeffs terms;  ///< nonnegative, possibly zero, over all generators
};

RawSum random_raw_sum(const ConePresentation& p, Rng& rng);
ConeElement random_element(const ConePresentation& p, Rng& rng);

/// Random support and dyadic ray values in (0, 8].
LscFn random_affine(const ConePresentation& p, Rng& rng);
/// As random_affine with each ray value ∞ with probability 1/4.
LscFn random_lsc(const ConePresentation& p, Rng& rng);
/// Affine f with f ◁ g: ray-wise a dyadic fraction in [0, 3/4] of g, on a support above v_g.
LscFn random_lhd_below(const ConePresentation& p, Rng& rng, const LscFn& g);

/// Positive vector of the given support with dyadic entries.
RieszVector random_positive(const ConePresentation& p, Rng& rng, IdemId w);
RieszVector random_vector(const ConePresentation& p, Rng& rng);

/// ExtVector of length n with dyadic entries and ∞ with probability 1/8.
ExtVector random_ext_vector(Rng& rng, std::size_t n);

}  // namespace ecc
