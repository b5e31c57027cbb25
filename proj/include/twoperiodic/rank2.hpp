#pragma once

// Generic branch, det(A) != 0. A is positive, so its discriminant is
// positive: two real eigenvalues lambda1 > |lambda2| and
//   u_{2n} = C1 lambda1^n - C2 lambda2^n,   v_{2n} = C3 lambda1^n - C4 lambda2^n.
// x_n and y_n follow as products of bounded ratios of these sequences.

#include <cstddef>
#include <vector>

#include "twoperiodic/classification.hpp"
#include "twoperiodic/core.hpp"
#include "twoperiodic/transfer.hpp"

namespace twoperiodic {

template <class Real>
struct Eigenvalues {
  Real lambda1;
  Real lambda2;
};

template <class Real>
struct SpectralData {
  Real lambda1;
  Real lambda2;
  Real C1;
  Real C2;
  Real C3;
  Real C4;
  Real Q;  // C1 / C3, evaluated as (a0 b1 + a1 c0) / (lambda1 - (a1 d0 + b0 b1))
};

/// lambda_{1,2} = (T +- sqrt(D)) / 2. Throws BranchError for rank 1. In exact
/// mode throws DomainError("lambda", ...) unless sqrt(D) is rational.
template <class Real>
Eigenvalues<Real> eigenvalues(const BasicCoefficients<Real>& params,
                              double eps_rank = kDefaultRankEps);

/// Columns of the eigenvector matrix P: (Q, 1) for lambda1 and
/// ((a0 b1 + a1 c0) / (lambda2 - (a1 d0 + b0 b1)), 1) for lambda2.
template <class Real>
Matrix2<Real> eigenvector_matrix(const BasicCoefficients<Real>& params,
                                 double eps_rank = kDefaultRankEps);

template <class Real>
SpectralData<Real> spectral_constants(const BasicCoefficients<Real>& params,
                                      const State<Real>& init, double eps_rank = kDefaultRankEps);

struct SignedLog {
  int sign;
  double log_abs;
};

struct LogUV {
  SignedLog u;
  SignedLog v;
};

/// Exact (u_n, v_n); requires rational eigenvalues.
UV<Rational> rank2_uv(const ExactCoefficients& params, const State<Rational>& init,
                      std::size_t n);
/// (sign, log|.|) of (u_n, v_n).
LogUV rank2_uv(const Coefficients& params, const State<double>& init, std::size_t n,
               double eps_rank = kDefaultRankEps);

template <class Real>
State<Real> rank2_solution(const BasicCoefficients<Real>& params, const State<Real>& init,
                           std::size_t n, double eps_rank = kDefaultRankEps);

/// Closed-form states 0..n_max in one pass over the factor sequences. Float
/// values are accumulated in log space and exponentiated at the end.
template <class Real>
std::vector<State<Real>> rank2_orbit(const BasicCoefficients<Real>& params, const State<Real>& init,
                                     std::size_t n_max, double eps_rank = kDefaultRankEps);

LogState rank2_log_solution(const Coefficients& params, const State<double>& init,
                            std::size_t n, double eps_rank = kDefaultRankEps);

/// Q, delta = lambda1 Q - (b0 Q + a0)(d0 Q + c0) and its scale. Reads no
/// initial condition.
Rank2Witness criterion_delta(const Coefficients& params, double eps_rank = kDefaultRankEps);

struct LimitRatios {
  double L1;  // from the p_k, q_k limits (even x factors)
  double L2;  // from the r_k, s_k limits (even y factors)
};

/// The two closed-form limits of the product terms; equal in exact arithmetic.
LimitRatios limit_ratios(const Coefficients& params, double eps_rank = kDefaultRankEps);

/// delta < -tol S: VanishEvenBlowOdd; delta > tol S: BlowEvenVanishOdd;
/// otherwise ConvergesToTwoPeriodic. No cycle is attached here.
Classification classify_rank2(const Coefficients& params, double tol = kDefaultClassTol,
                              double eps_rank = kDefaultRankEps);

struct CycleOptions {
  double tol = kDefaultCycleTol;
  std::size_t cap = kDefaultCycleCap;
  double class_tol = kDefaultClassTol;
  double eps_rank = kDefaultRankEps;
};

/// Limits (x_even, x_odd, y_even, y_odd) of the four subsequences, from the
/// partial products of the factor sequences. Stops once a factor's log
/// deviation from its limit, and the geometric tail bound with ratio
/// |lambda2 / lambda1|, are both below tol. BranchError unless the parameters
/// classify as ConvergesToTwoPeriodic; ConvergenceError past the cap.
LimitCycle limit_cycle(const Coefficients& params, const State<double>& init,
                       const CycleOptions& opts = {});

/// Max relative defect of the two-periodic fixed-point equations.
double fixed_point_residual(const Coefficients& params, double x_even, double x_odd,
                            double y_even, double y_odd);

}  // namespace twoperiodic
