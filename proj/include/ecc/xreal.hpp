/**
 * @file xreal.hpp
 * @brief Exact arithmetic on the extended half-line [0,∞] and its finite powers.
 *
 * Finite values are GMP rationals kept in lowest terms; infinity is a separate
 * state rather than a sentinel number, so 0·∞ = 0 is an explicit rule.
 */
#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ecc {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" (q nonzero) into a canonical rational.
Rational parse_rational(std::string_view text);
/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);
bool is_integer(const Rational& q);

/**
 * @brief A point of [0,∞]: a nonnegative rational or ∞.
 */
class ExtScalar {
public:
    ExtScalar() = default;
    ExtScalar(const Rational& value);  // NOLINT(google-explicit-constructor)
    ExtScalar(long value);             // NOLINT(google-explicit-constructor)

    static ExtScalar infinity();

    [[nodiscard]] bool is_infinite() const { return !finite_.has_value(); }
    [[nodiscard]] bool is_finite() const { return finite_.has_value(); }
    [[nodiscard]] bool is_zero() const { return finite_ && sgn(*finite_) == 0; }
    /// The finite value; throws PreconditionError on ∞.
    [[nodiscard]] const Rational& value() const;

    /// a - b for b <= a; ∞ - finite = ∞. Throws when b > a or b = ∞.
    [[nodiscard]] ExtScalar minus(const ExtScalar& b) const;

    friend ExtScalar operator+(const ExtScalar& a, const ExtScalar& b);
    friend ExtScalar operator*(const ExtScalar& a, const ExtScalar& b);
    ExtScalar& operator+=(const ExtScalar& b);

    friend bool operator==(const ExtScalar& a, const ExtScalar& b);
    friend std::strong_ordering operator<=>(const ExtScalar& a, const ExtScalar& b);

    [[nodiscard]] std::string to_string() const;
    /// Accepts "inf" or a nonnegative rational literal.
    static ExtScalar parse(std::string_view text);

private:
    std::optional<Rational> finite_{Rational(0)};
};

std::ostream& operator<<(std::ostream& os, const ExtScalar& x);

using ExtVector = std::vector<ExtScalar>;
using RatVector = std::vector<Rational>;

ExtScalar ext_add(const ExtScalar& a, const ExtScalar& b);
ExtScalar ext_mul(const ExtScalar& a, const ExtScalar& b);
bool ext_leq(const ExtScalar& a, const ExtScalar& b);

ExtVector vec_add(const ExtVector& x, const ExtVector& y);
ExtVector vec_scale(const ExtScalar& t, const ExtVector& x);
bool vec_leq(const ExtVector& x, const ExtVector& y);
/// x ≪ y in [0,∞]^n: every coordinate has x_i < y_i or x_i = y_i = 0.
bool vec_way_below(const ExtVector& x, const ExtVector& y);
/// ∞ exactly where x is ∞, zero elsewhere.
ExtVector vec_support_idem(const ExtVector& x);

ExtVector to_ext(const RatVector& x);
std::string to_string(const ExtVector& x);
/// Parses "[a, b, ...]" with entries as accepted by ExtScalar::parse.
ExtVector parse_ext_vector(std::string_view text);

}  // namespace ecc
