#pragma once

// Domain types and direct iteration of
//   x_{n+1} = a_n / x_n + b_n / y_n,   y_{n+1} = c_n / x_n + d_n / y_n
// with two-periodic positive coefficients. Direct iteration is the ground
// truth every closed form in this library is checked against.

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "twoperiodic/errors.hpp"
#include "twoperiodic/scalar.hpp"

namespace twoperiodic {

enum class Parity { Even, Odd };

/// Coefficient parity for index n: a_{2k} = a0, a_{2k+1} = a1.
constexpr Parity parity_of(std::size_t n) noexcept {
  return n % 2 == 0 ? Parity::Even : Parity::Odd;
}

enum class Coef : std::size_t { a0, a1, b0, b1, c0, c1, d0, d1 };

inline constexpr std::array<std::string_view, 8> kCoefNames = {
    "a0", "a1", "b0", "b1", "c0", "c1", "d0", "d1"};

std::optional<Coef> coef_from_name(std::string_view name) noexcept;
constexpr std::string_view coef_name(Coef c) noexcept {
  return kCoefNames[static_cast<std::size_t>(c)];
}

/// The eight positive values a0..d1 of the two-periodic coefficient sequences.
template <class Real>
class BasicCoefficients {
 public:
  /// Throws DomainError naming the first coefficient that is not a finite
  /// positive value.
  BasicCoefficients(Real a0, Real a1, Real b0, Real b1, Real c0, Real c1, Real d0, Real d1);

  static BasicCoefficients constant(const Real& v) { return {v, v, v, v, v, v, v, v}; }

  const Real& get(Coef c) const noexcept { return v_[static_cast<std::size_t>(c)]; }
  BasicCoefficients with(Coef c, Real value) const;

  const Real& a0() const noexcept { return get(Coef::a0); }
  const Real& a1() const noexcept { return get(Coef::a1); }
  const Real& b0() const noexcept { return get(Coef::b0); }
  const Real& b1() const noexcept { return get(Coef::b1); }
  const Real& c0() const noexcept { return get(Coef::c0); }
  const Real& c1() const noexcept { return get(Coef::c1); }
  const Real& d0() const noexcept { return get(Coef::d0); }
  const Real& d1() const noexcept { return get(Coef::d1); }

  const Real& a(Parity p) const noexcept { return p == Parity::Even ? a0() : a1(); }
  const Real& b(Parity p) const noexcept { return p == Parity::Even ? b0() : b1(); }
  const Real& c(Parity p) const noexcept { return p == Parity::Even ? c0() : c1(); }
  const Real& d(Parity p) const noexcept { return p == Parity::Even ? d0() : d1(); }

  /// True when a0 != a1, b0 != b1, c0 != c1 and d0 != d1. Informational only:
  /// none of the formulas need it.
  bool strict_paper_regime() const noexcept;

  BasicCoefficients<double> to_double() const;

  bool operator==(const BasicCoefficients&) const = default;

 private:
  std::array<Real, 8> v_;
};

using Coefficients = BasicCoefficients<double>;
using ExactCoefficients = BasicCoefficients<Rational>;

template <class Real>
struct State {
  Real x;
  Real y;
};

template <class Real>
struct OrbitPoint {
  std::size_t n;
  Real x;
  Real y;
};

/// Orbit points with contiguous indices 0..N, all components positive.
template <class Real>
class BasicOrbit {
 public:
  BasicOrbit() = default;
  /// Validates index contiguity and positivity; throws InputError / DomainError.
  explicit BasicOrbit(std::vector<OrbitPoint<Real>> points);

  /// Appends the next point (index size()).
  void append(const State<Real>& s);

  static constexpr ArithmeticMode mode() noexcept { return mode_of_v<Real>; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const OrbitPoint<Real>& operator[](std::size_t n) const { return points_[n]; }
  const OrbitPoint<Real>& back() const { return points_.back(); }
  State<Real> state(std::size_t n) const { return {points_.at(n).x, points_.at(n).y}; }
  const std::vector<OrbitPoint<Real>>& points() const noexcept { return points_; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

 private:
  std::vector<OrbitPoint<Real>> points_;
};

using Orbit = BasicOrbit<double>;
using ExactOrbit = BasicOrbit<Rational>;

/// Float orbit left the representable range at `index()`; `partial()` holds
/// points 0..index()-1.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(std::size_t index, Orbit partial);
  std::size_t index() const noexcept { return index_; }
  const Orbit& partial() const noexcept { return partial_; }

 private:
  std::size_t index_;
  Orbit partial_;
};

struct SimulateOptions {
  /// Exact mode only: abort with ResourceError once a numerator exceeds this.
  std::size_t max_numerator_bits = 1'000'000;
};

/// One application of the system at index n (coefficients chosen by n mod 2).
template <class Real>
State<Real> step(const BasicCoefficients<Real>& params, std::size_t n, const State<Real>& s);

/// Points 0..n_max, point 0 = init.
template <class Real>
BasicOrbit<Real> simulate(const BasicCoefficients<Real>& params, const State<Real>& init,
                          std::size_t n_max, const SimulateOptions& opts = {});

struct LogState {
  double log_x;
  double log_y;
};

/// Same orbit as simulate() but carried as (log x_n, log y_n); never
/// overflows, so it is usable for n in the millions.
std::vector<LogState> log_simulate(const Coefficients& params, const State<double>& init,
                                   std::size_t n_max);

/// log(e^p + e^q) without overflow.
double log_add_exp(double p, double q) noexcept;

extern template class BasicCoefficients<double>;
extern template class BasicCoefficients<Rational>;
extern template class BasicOrbit<double>;
extern template class BasicOrbit<Rational>;

}  // namespace twoperiodic
