#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

namespace twoperiodic {

/// Arbitrary-precision rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;

enum class ArithmeticMode { Float64, ExactRational };

template <class Real>
inline constexpr bool is_exact_v = std::is_same_v<Real, Rational>;

template <class Real>
inline constexpr ArithmeticMode mode_of_v =
    is_exact_v<Real> ? ArithmeticMode::ExactRational : ArithmeticMode::Float64;

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.get_d(); }

/// Natural log of a positive value. For rationals the numerator and
/// denominator are handled separately so huge values do not overflow.
double log_of(const Rational& v);
inline double log_of(double v) { return std::log(v); }

/// Bit length of |numerator|.
std::size_t numerator_bits(const Rational& v);

/// Integer power with a possibly negative exponent (base must be non-zero).
Rational pow_int(const Rational& base, long exponent);
inline double pow_int(double base, long exponent) {
  return std::pow(base, static_cast<double>(exponent));
}

/// Exact square root when the argument is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& v);

/// Parses "p/q", an integer, or a decimal literal ("0.25", "1e-3") exactly.
/// Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

/// Parses a float; accepts "p/q" as well. Throws std::invalid_argument.
double parse_double(std::string_view text);

/// 17 significant digits, fixed formatting for reproducible output.
std::string format_scalar(double v);
/// "p/q", or "p" when the denominator is 1.
std::string format_scalar(const Rational& v);

}  // namespace twoperiodic
