#include "twoperiodic/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace twoperiodic {

std::optional<Coef> coef_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kCoefNames.size(); ++i) {
    if (kCoefNames[i] == name) return static_cast<Coef>(i);
  }
  return std::nullopt;
}

namespace {

template <class Real>
bool is_positive_finite(const Real& v) {
  if constexpr (is_exact_v<Real>) {
    return v > 0;
  } else {
    return std::isfinite(v) && v > 0;
  }
}

template <class Real>
void check_state(const State<Real>& s) {
  if constexpr (!is_exact_v<Real>) {
    if (!std::isfinite(s.x)) throw DomainError("x", "state component x is not finite");
    if (!std::isfinite(s.y)) throw DomainError("y", "state component y is not finite");
  }
  if (!(s.x > 0)) throw DomainError("x", "state component x must be positive");
  if (!(s.y > 0)) throw DomainError("y", "state component y must be positive");
}

}  // namespace

template <class Real>
BasicCoefficients<Real>::BasicCoefficients(Real a0, Real a1, Real b0, Real b1, Real c0, Real c1,
                                           Real d0, Real d1)
    : v_{std::move(a0), std::move(a1), std::move(b0), std::move(b1),
         std::move(c0), std::move(c1), std::move(d0), std::move(d1)} {
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (!is_positive_finite(v_[i])) {
      throw DomainError(std::string(kCoefNames[i]),
                        "coefficient " + std::string(kCoefNames[i]) + " must be finite and positive");
    }
  }
}

template <class Real>
BasicCoefficients<Real> BasicCoefficients<Real>::with(Coef c, Real value) const {
  BasicCoefficients out = *this;
  if (!is_positive_finite(value)) {
    throw DomainError(std::string(coef_name(c)),
                      "coefficient " + std::string(coef_name(c)) + " must be finite and positive");
  }
  out.v_[static_cast<std::size_t>(c)] = std::move(value);
  return out;
}

template <class Real>
bool BasicCoefficients<Real>::strict_paper_regime() const noexcept {
  return a0() != a1() && b0() != b1() && c0() != c1() && d0() != d1();
}

template <class Real>
BasicCoefficients<double> BasicCoefficients<Real>::to_double() const {
  using twoperiodic::to_double;
  return {to_double(a0()), to_double(a1()), to_double(b0()), to_double(b1()),
          to_double(c0()), to_double(c1()), to_double(d0()), to_double(d1())};
}

template <class Real>
BasicOrbit<Real>::BasicOrbit(std::vector<OrbitPoint<Real>> points) : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].n != i) throw InputError("orbit indices must be contiguous from 0");
    check_state(State<Real>{points_[i].x, points_[i].y});
  }
}

template <class Real>
void BasicOrbit<Real>::append(const State<Real>& s) {
  check_state(s);
  points_.push_back({points_.size(), s.x, s.y});
}

TruncationError::TruncationError(std::size_t index, Orbit partial)
    : std::runtime_error("float orbit left the representable range at n=" + std::to_string(index)),
      index_(index),
      partial_(std::move(partial)) {}

template <class Real>
State<Real> step(const BasicCoefficients<Real>& params, std::size_t n, const State<Real>& s) {
  check_state(s);
  const Parity p = parity_of(n);
  Real x = params.a(p) / s.x + params.b(p) / s.y;
  Real y = params.c(p) / s.x + params.d(p) / s.y;
  return {std::move(x), std::move(y)};
}

template <class Real>
BasicOrbit<Real> simulate(const BasicCoefficients<Real>& params, const State<Real>& init,
                          std::size_t n_max, const SimulateOptions& opts) {
  BasicOrbit<Real> orbit;
  orbit.append(init);
  State<Real> s = init;
  for (std::size_t n = 0; n < n_max; ++n) {
    s = step(params, n, s);
    if constexpr (is_exact_v<Real>) {
      if (numerator_bits(s.x) > opts.max_numerator_bits ||
          numerator_bits(s.y) > opts.max_numerator_bits) {
        throw ResourceError("exact orbit numerator exceeded " +
                            std::to_string(opts.max_numerator_bits) + " bits at n=" +
                            std::to_string(n + 1));
      }
    } else {
      if (!std::isfinite(s.x) || !std::isfinite(s.y) || s.x == 0.0 || s.y == 0.0) {
        throw TruncationError(n + 1, std::move(orbit));
      }
    }
    orbit.append(s);
  }
  return orbit;
}

double log_add_exp(double p, double q) noexcept {
  const double hi = std::max(p, q);
  return hi + std::log1p(std::exp(-std::fabs(p - q)));
}

std::vector<LogState> log_simulate(const Coefficients& params, const State<double>& init,
                                   std::size_t n_max) {
  check_state(init);
  std::array<double, 8> lc{};
  for (std::size_t i = 0; i < lc.size(); ++i) lc[i] = std::log(params.get(static_cast<Coef>(i)));
  const auto L = [&](Coef c) { return lc[static_cast<std::size_t>(c)]; };

  std::vector<LogState> out;
  out.reserve(n_max + 1);
  out.push_back({std::log(init.x), std::log(init.y)});
  for (std::size_t n = 0; n < n_max; ++n) {
    const auto [lx, ly] = out.back();
    const bool even = parity_of(n) == Parity::Even;
    const double la = L(even ? Coef::a0 : Coef::a1);
    const double lb = L(even ? Coef::b0 : Coef::b1);
    const double lcc = L(even ? Coef::c0 : Coef::c1);
    const double ld = L(even ? Coef::d0 : Coef::d1);
    out.push_back({log_add_exp(la - lx, lb - ly), log_add_exp(lcc - lx, ld - ly)});
  }
  return out;
}

template class BasicCoefficients<double>;
template class BasicCoefficients<Rational>;
template class BasicOrbit<double>;
template class BasicOrbit<Rational>;

template State<double> step(const Coefficients&, std::size_t, const State<double>&);
template State<Rational> step(const ExactCoefficients&, std::size_t, const State<Rational>&);
template Orbit simulate(const Coefficients&, const State<double>&, std::size_t,
                        const SimulateOptions&);
template ExactOrbit simulate(const ExactCoefficients&, const State<Rational>&, std::size_t,
                             const SimulateOptions&);

}  // namespace twoperiodic
