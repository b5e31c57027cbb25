#include "twoperiodic/transfer.hpp"

#include <cmath>

namespace twoperiodic {

std::vector<UVPoint<Rational>> uv_from_orbit(const ExactOrbit& orbit) {
  if (orbit.empty()) throw InputError("uv_from_orbit: empty orbit");
  std::vector<UVPoint<Rational>> out;
  out.reserve(orbit.size());
  // prod_x = x_0..x_n, prod_y = y_0..y_n; *_prev stop at n-1.
  Rational prod_x_prev = 1;
  Rational prod_y_prev = 1;
  Rational prod_x = 1;
  Rational prod_y = 1;
  for (const auto& pt : orbit) {
    prod_x_prev = prod_x;
    prod_y_prev = prod_y;
    prod_x *= pt.x;
    prod_y *= pt.y;
    out.push_back({pt.n, Rational(prod_x * prod_y_prev), Rational(prod_x_prev * prod_y)});
  }
  return out;
}

std::vector<LogUVPoint> uv_from_orbit(const Orbit& orbit) {
  if (orbit.empty()) throw InputError("uv_from_orbit: empty orbit");
  std::vector<LogUVPoint> out;
  out.reserve(orbit.size());
  double sum_x_prev = 0.0;
  double sum_y_prev = 0.0;
  double sum_x = 0.0;
  double sum_y = 0.0;
  for (const auto& pt : orbit) {
    sum_x_prev = sum_x;
    sum_y_prev = sum_y;
    sum_x += std::log(pt.x);
    sum_y += std::log(pt.y);
    out.push_back({pt.n, sum_x + sum_y_prev, sum_x_prev + sum_y});
  }
  return out;
}

Rank rank_decision(const Matrix2<double>& a, double eps) {
  const double diag = a.m11 * a.m22;
  const double off = a.m12 * a.m21;
  return std::fabs(diag - off) <= eps * (std::fabs(diag) + std::fabs(off)) ? Rank::One : Rank::Two;
}

Rank rank_decision(const Matrix2<Rational>& a) {
  return a.det() == 0 ? Rank::One : Rank::Two;
}

}  // namespace twoperiodic
