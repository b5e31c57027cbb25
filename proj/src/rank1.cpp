#include "twoperiodic/rank1.hpp"

#include <cmath>
#include <string>

namespace twoperiodic {

namespace {

template <class Real>
void require_rank1(const BasicCoefficients<Real>& params, double eps_rank) {
  if (rank_of(params, eps_rank) != Rank::One) {
    throw BranchError("K undefined for rank-2 composed matrix");
  }
}

// Quantities at indices 0..3 that anchor the progressions.
template <class Real>
struct Anchor {
  Rank1Data<Real> data;
  UV<Real> uv0;
  UV<Real> uv1;
  Real u2;
  State<Real> s1;
  State<Real> s2;
  State<Real> s3;
};

template <class Real>
Anchor<Real> anchor(const BasicCoefficients<Real>& p, const State<Real>& init, double eps_rank) {
  Rank1Data<Real> d = growth_and_ratio(p, eps_rank);
  const UV<Real> uv0{init.x, init.y};
  const UV<Real> uv1 = linear_step(parity_matrix(p, Parity::Even), uv0);
  const Real u2 = linear_step(parity_matrix(p, Parity::Odd), uv1).u;
  const State<Real> s1 = step(p, 0, init);
  const Real uv1_prod = uv1.u * uv1.v;
  // x_2 = x_0 u_2 v_0 / (u_1 v_1),  y_2 = y_0 v_2 u_0 / (v_1 u_1) with v_2 = K u_2.
  State<Real> s2{init.x * u2 * uv0.v / uv1_prod, init.y * d.K * u2 * uv0.u / uv1_prod};
  // x_3 = x_1 u_3 v_1 / (u_2 v_2),  u_3 = (b0 + K a0) u_2.
  State<Real> s3{s1.x * (p.b0() + d.K * p.a0()) * uv1.v / (d.K * u2),
                 s1.y * (p.d0() + d.K * p.c0()) * uv1.u / (d.K * u2)};
  return {std::move(d), uv0, uv1, u2, s1, std::move(s2), std::move(s3)};
}

}  // namespace

template <class Real>
Real k_constant(const BasicCoefficients<Real>& p, double eps_rank) {
  require_rank1(p, eps_rank);
  const Matrix2<Real> a = composed_matrix(p);
  Real k = a.m21 / a.m11;
  const Real alt = a.m22 / a.m12;
  bool consistent = false;
  if constexpr (is_exact_v<Real>) {
    consistent = k == alt;
  } else {
    consistent = std::fabs(k - alt) <= kDefaultKConsistencyEps * std::fmax(k, alt);
  }
  if (!consistent) {
    throw BranchError("the two expressions for K disagree (" + format_scalar(k) + " vs " +
                      format_scalar(alt) + "); composed matrix is not rank 1");
  }
  return k;
}

template <class Real>
Rank1Data<Real> growth_and_ratio(const BasicCoefficients<Real>& p, double eps_rank) {
  Real k = k_constant(p, eps_rank);
  const Matrix2<Real> a = composed_matrix(p);
  Real mu = a.m11 + k * a.m12;
  Real rho = k * mu / ((p.b0() + k * p.a0()) * (p.d0() + k * p.c0()));
  return {std::move(k), std::move(mu), std::move(rho)};
}

Rank1UV<Rational> rank1_uv(const ExactCoefficients& p, const State<Rational>& init,
                           std::size_t m) {
  if (m == 0) throw InputError("rank1_uv: m must be >= 1 (v_0 = K u_0 does not hold in general)");
  const auto d = growth_and_ratio(p);
  const UV<Rational> uv2 = linear_step(composed_matrix(p), UV<Rational>{init.x, init.y});
  const Rational scale = pow_int(d.mu, static_cast<long>(m) - 1) * uv2.u;
  return {scale, d.K * scale, (p.b0() + d.K * p.a0()) * scale, (p.d0() + d.K * p.c0()) * scale};
}

LogRank1UV rank1_uv(const Coefficients& p, const State<double>& init, std::size_t m,
                    double eps_rank) {
  if (m == 0) throw InputError("rank1_uv: m must be >= 1 (v_0 = K u_0 does not hold in general)");
  const auto d = growth_and_ratio(p, eps_rank);
  const UV<double> uv2 = linear_step(composed_matrix(p), UV<double>{init.x, init.y});
  const double log_scale = static_cast<double>(m - 1) * std::log(d.mu) + std::log(uv2.u);
  return {log_scale, std::log(d.K) + log_scale, std::log(p.b0() + d.K * p.a0()) + log_scale,
          std::log(p.d0() + d.K * p.c0()) + log_scale};
}

LogState rank1_log_solution(const Coefficients& p, const State<double>& init, std::size_t n,
                            double eps_rank) {
  const Anchor<double> an = anchor(p, init, eps_rank);
  if (n == 0) return {std::log(init.x), std::log(init.y)};
  if (n == 1) return {std::log(an.s1.x), std::log(an.s1.y)};
  const double log_rho = std::log(an.data.rho);
  const double powers = static_cast<double>(n / 2 - 1);
  if (n % 2 == 0) {
    return {std::log(an.s2.x) + powers * log_rho, std::log(an.s2.y) + powers * log_rho};
  }
  return {std::log(an.s3.x) - powers * log_rho, std::log(an.s3.y) - powers * log_rho};
}

template <class Real>
State<Real> rank1_solution(const BasicCoefficients<Real>& p, const State<Real>& init,
                           std::size_t n, double eps_rank) {
  if constexpr (is_exact_v<Real>) {
    const Anchor<Real> an = anchor(p, init, eps_rank);
    if (n == 0) return init;
    if (n == 1) return an.s1;
    const long powers = static_cast<long>(n / 2) - 1;
    if (n % 2 == 0) {
      const Rational f = pow_int(an.data.rho, powers);
      return {an.s2.x * f, an.s2.y * f};
    }
    const Rational f = pow_int(an.data.rho, -powers);
    return {an.s3.x * f, an.s3.y * f};
  } else {
    if (n == 0) return init;
    const LogState ls = rank1_log_solution(p, init, n, eps_rank);
    return {std::exp(ls.log_x), std::exp(ls.log_y)};
  }
}

Classification classify_rank1(const Coefficients& p, double tol, double eps_rank) {
  const auto d = growth_and_ratio(p, eps_rank);
  Kind kind = Kind::ExactTwoPeriodic;
  if (d.rho < 1.0 - tol) {
    kind = Kind::VanishEvenBlowOdd;
  } else if (d.rho > 1.0 + tol) {
    kind = Kind::BlowEvenVanishOdd;
  }
  return {kind, Rank::One, d, std::nullopt, std::nullopt};
}

Classification classify_rank1(const ExactCoefficients& p) {
  auto d = growth_and_ratio(p);
  Kind kind = Kind::ExactTwoPeriodic;
  if (d.rho < 1) {
    kind = Kind::VanishEvenBlowOdd;
  } else if (d.rho > 1) {
    kind = Kind::BlowEvenVanishOdd;
  }
  const Rank1Data<double> approx{d.K.get_d(), d.mu.get_d(), d.rho.get_d()};
  return {kind, Rank::One, approx, std::move(d), std::nullopt};
}

template double k_constant(const Coefficients&, double);
template Rational k_constant(const ExactCoefficients&, double);
template Rank1Data<double> growth_and_ratio(const Coefficients&, double);
template Rank1Data<Rational> growth_and_ratio(const ExactCoefficients&, double);
template State<double> rank1_solution(const Coefficients&, const State<double>&, std::size_t,
                                      double);
template State<Rational> rank1_solution(const ExactCoefficients&, const State<Rational>&,
                                        std::size_t, double);

}  // namespace twoperiodic
