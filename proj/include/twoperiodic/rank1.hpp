#pragma once

// Degenerate branch, det(A) == 0. Rows of A are proportional,
//   (b0 d1 + c1 d0, a0 d1 + c0 c1) = K (a1 d0 + b0 b1, a0 b1 + a1 c0),
// so from n = 1 on the (u, v) dynamics is one-dimensional.
//
// The geometric progressions start at index 2, not 0: u_{2m} = mu^{m-1} u_2
// only for m >= 1 and v_0 = K u_0 is false in general. Hence
//   x_{2m} = x_2 rho^{m-1},  x_{2m+1} = x_3 rho^{-(m-1)}   (m >= 1)
// and likewise for y. When y0 = K x0 this reduces to x_{2m} = x0 rho^m.

#include <cstddef>

#include "twoperiodic/classification.hpp"
#include "twoperiodic/core.hpp"
#include "twoperiodic/transfer.hpp"

namespace twoperiodic {

inline constexpr double kDefaultKConsistencyEps = 1e-10;

/// K = (b0 d1 + c1 d0) / (a1 d0 + b0 b1). Throws BranchError on a rank-2
/// composed matrix or when the alternative expression (a0 d1 + c0 c1) /
/// (a0 b1 + a1 c0) disagrees beyond kDefaultKConsistencyEps.
template <class Real>
Real k_constant(const BasicCoefficients<Real>& params, double eps_rank = kDefaultRankEps);

/// K, mu = a1 d0 + b0 b1 + K (a0 b1 + a1 c0), rho = K mu / ((b0 + K a0)(d0 + K c0)).
template <class Real>
Rank1Data<Real> growth_and_ratio(const BasicCoefficients<Real>& params,
                                 double eps_rank = kDefaultRankEps);

template <class Real>
struct Rank1UV {
  Real u_even;  // u_{2m}
  Real v_even;  // v_{2m}
  Real u_odd;   // u_{2m+1}
  Real v_odd;   // v_{2m+1}
};

struct LogRank1UV {
  double log_u_even;
  double log_v_even;
  double log_u_odd;
  double log_v_odd;
};

/// (u_{2m}, v_{2m}, u_{2m+1}, v_{2m+1}) from u_2; m >= 1 (InputError otherwise).
Rank1UV<Rational> rank1_uv(const ExactCoefficients& params, const State<Rational>& init,
                           std::size_t m);
LogRank1UV rank1_uv(const Coefficients& params, const State<double>& init, std::size_t m,
                    double eps_rank = kDefaultRankEps);

/// Closed-form (x_n, y_n). Float mode evaluates in log space.
template <class Real>
State<Real> rank1_solution(const BasicCoefficients<Real>& params, const State<Real>& init,
                           std::size_t n, double eps_rank = kDefaultRankEps);

/// (log x_n, log y_n) for any n, no overflow.
LogState rank1_log_solution(const Coefficients& params, const State<double>& init,
                            std::size_t n, double eps_rank = kDefaultRankEps);

/// rho < 1 - tol: VanishEvenBlowOdd; rho > 1 + tol: BlowEvenVanishOdd;
/// otherwise ExactTwoPeriodic. Exact mode compares rho with 1 exactly.
Classification classify_rank1(const Coefficients& params, double tol = kDefaultClassTol,
                              double eps_rank = kDefaultRankEps);
Classification classify_rank1(const ExactCoefficients& params);

}  // namespace twoperiodic
