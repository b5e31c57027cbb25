#pragma once

// Linearization of the system. With
//   u_n = (x_0 ... x_n)(y_0 ... y_{n-1}),   v_n = (x_0 ... x_{n-1})(y_0 ... y_n)
// (empty products are 1, so u_0 = x_0 and v_0 = y_0) the orbit satisfies
//   (u_{n+1}, v_{n+1}) = A_n (u_n, v_n),   A_n = ((b_n, a_n), (d_n, c_n)),
// and two steps compose to A = A_1 A_0.

#include <cstddef>
#include <vector>

#include "twoperiodic/core.hpp"

namespace twoperiodic {

inline constexpr double kDefaultRankEps = 1e-12;

template <class Real>
struct Matrix2 {
  Real m11;
  Real m12;
  Real m21;
  Real m22;

  Real det() const { return m11 * m22 - m12 * m21; }
  Real trace() const { return m11 + m22; }

  Matrix2 operator*(const Matrix2& o) const {
    return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
            m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
  }
  bool operator==(const Matrix2&) const = default;
};

template <class Real>
struct UV {
  Real u;
  Real v;
  bool operator==(const UV&) const = default;
};

template <class Real>
struct UVPoint {
  std::size_t n;
  Real u;
  Real v;
};

struct LogUVPoint {
  std::size_t n;
  double log_u;
  double log_v;
};

enum class Rank : int { One = 1, Two = 2 };

/// A_0 = ((b0, a0), (d0, c0)) or A_1 = ((b1, a1), (d1, c1)).
template <class Real>
Matrix2<Real> parity_matrix(const BasicCoefficients<Real>& params, Parity parity) {
  return {params.b(parity), params.a(parity), params.d(parity), params.c(parity)};
}

/// A = A_1 A_0 = ((a1 d0 + b0 b1, a0 b1 + a1 c0), (b0 d1 + c1 d0, a0 d1 + c0 c1)).
template <class Real>
Matrix2<Real> composed_matrix(const BasicCoefficients<Real>& p) {
  return {p.a1() * p.d0() + p.b0() * p.b1(), p.a0() * p.b1() + p.a1() * p.c0(),
          p.b0() * p.d1() + p.c1() * p.d0(), p.a0() * p.d1() + p.c0() * p.c1()};
}

/// det(A) = det(A_0) det(A_1) = (b0 c0 - a0 d0)(b1 c1 - a1 d1). The factored
/// form avoids the cancellation of m11 m22 - m12 m21.
template <class Real>
Real composed_det(const BasicCoefficients<Real>& p) {
  return (p.b0() * p.c0() - p.a0() * p.d0()) * (p.b1() * p.c1() - p.a1() * p.d1());
}

template <class Real>
UV<Real> linear_step(const Matrix2<Real>& m, const UV<Real>& p) {
  return {m.m11 * p.u + m.m12 * p.v, m.m21 * p.u + m.m22 * p.v};
}

/// Exact products u_n, v_n along the orbit.
std::vector<UVPoint<Rational>> uv_from_orbit(const ExactOrbit& orbit);
/// Log-space (log u_n, log v_n); float products overflow long before the orbit does.
std::vector<LogUVPoint> uv_from_orbit(const Orbit& orbit);

/// Rank 1 iff |det| <= eps (|m11 m22| + |m12 m21|).
Rank rank_decision(const Matrix2<double>& a, double eps = kDefaultRankEps);
/// Rank 1 iff det == 0 exactly.
Rank rank_decision(const Matrix2<Rational>& a);

/// rank_decision(composed_matrix(params)); eps is ignored in exact mode.
template <class Real>
Rank rank_of(const BasicCoefficients<Real>& params, double eps = kDefaultRankEps) {
  if constexpr (is_exact_v<Real>) {
    return rank_decision(composed_matrix(params));
  } else {
    return rank_decision(composed_matrix(params), eps);
  }
}

}  // namespace twoperiodic
