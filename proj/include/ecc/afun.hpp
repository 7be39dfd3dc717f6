/**
 * @file afun.hpp
 * @brief Linear lower-semicontinuous functions on a presented cone.
 *
 * A function is stored in normal form: its support idempotent v and its
 * values in (0,∞] on the rays R_v. Every other value is derived through the
 * reduction table; f is ∞ on elements whose support is not below v.
 * Affine functions are those whose ray values are all finite.
 */
#pragma once

#include "ecc/fg_cone.hpp"

#include <map>

namespace ecc {

struct LscFn {
    IdemId support = 0;
    std::map<GenId, ExtScalar> values;
    friend bool operator==(const LscFn&, const LscFn&) = default;
};

/// Throws PreconditionError unless f is in normal form for p.
void check_function(const ConePresentation& p, const LscFn& f);
bool is_affine(const LscFn& f);
void require_affine(const LscFn& f, const char* what);

/// The zero function: support top, no rays.
LscFn zero_function(const ConePresentation& p);
bool is_zero_function(const ConePresentation& p, const LscFn& f);

ExtScalar eval_generator(const ConePresentation& p, const LscFn& f, GenId x);
ExtScalar eval(const ConePresentation& p, const LscFn& f, const ConeElement& y);

LscFn afun_add(const ConePresentation& p, const LscFn& f, const LscFn& g);
/// t·f with 0·f = 0 and ∞·f = infty_scale(f).
LscFn afun_scale(const ConePresentation& p, const ExtScalar& t, const LscFn& f);
/// Same support, every ray value ∞.
LscFn infty_scale(const LscFn& f);

enum class Comparison { leq, lhd, way_below };

/**
 * @brief Closed-form comparisons over generators x with support(x) ≤ v_g:
 * leq needs f(x) ≤ g(x); lhd and way_below need f(x) < g(x) or
 * f(x) = g(x) = 0 with f(x) finite. lhd requires affine f.
 */
bool afun_compare(const ConePresentation& p, const LscFn& f, const LscFn& g, Comparison c);
bool afun_leq(const ConePresentation& p, const LscFn& f, const LscFn& g);
bool afun_lhd(const ConePresentation& p, const LscFn& f, const LscFn& g);
bool afun_way_below(const ConePresentation& p, const LscFn& f, const LscFn& g);

/// Canonical approximant g_n: support v_g, values (1 - 2^-n)·min(value, 2^n).
LscFn approximant(const LscFn& g, unsigned n);

struct Subtraction {
    LscFn h;          ///< f + h = g
    Rational epsilon; ///< h ≥ epsilon·g, epsilon ∈ (0,1]
};

/// Requires f ◁ g.
Subtraction afun_subtract(const ConePresentation& p, const LscFn& f, const LscFn& g);

struct RieszSplit {
    LscFn f1;
    LscFn f2;
};

/// f = f1 + f2 with f1 ◁ g1, f2 ◁ g2; requires affine inputs and f ◁ g1 + g2.
RieszSplit riesz_decompose(const ConePresentation& p, const LscFn& f, const LscFn& g1, const LscFn& g2);

/// inf { f(y1) + g(y2) : y1 + y2 = y }, solved exactly per support pair.
ExtScalar inf_convolution(const ConePresentation& p, const LscFn& f, const LscFn& g, const ConeElement& y);

struct MeetOutcome {
    LscFn value;
    bool used_fallback = false;
};

/// f ∧ g: stratum-wise minimum, verified against the inf-convolution.
MeetOutcome afun_meet(const ConePresentation& p, const LscFn& f, const LscFn& g);

std::string to_string(const ConePresentation& p, const LscFn& f);

}  // namespace ecc
