#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "twoperiodic/classification.hpp"
#include "twoperiodic/core.hpp"
#include "twoperiodic/rank1.hpp"
#include "twoperiodic/rank2.hpp"

namespace twoperiodic {

struct ClassifyOptions {
  double eps_rank = kDefaultRankEps;
  double tol_class = kDefaultClassTol;
  double tol_cycle = kDefaultCycleTol;
  std::size_t cycle_cap = kDefaultCycleCap;
};

/// Rank dispatch followed by the matching trichotomy. ConvergesToTwoPeriodic
/// results carry the limit cycle of the probe orbit starting at (1, 1).
Classification classify(const Coefficients& params, const ClassifyOptions& opts = {});
/// Exact rank decision; rank-1 rho compared with 1 exactly. The rank-2 delta
/// is irrational in general and is evaluated in float.
Classification classify(const ExactCoefficients& params, const ClassifyOptions& opts = {});

enum class PeriodStatus { Periodic, EventuallyPeriodic, Aperiodic };

struct PeriodResult {
  PeriodStatus status;
  std::size_t n1;  // first index of the verified periodic stretch (meaningless if Aperiodic)
};

/// Smallest n1 with (x_{n+p}, y_{n+p}) == (x_n, y_n) for all n1 <= n <= N - p,
/// using relative gaps <= tol (exact equality for rational orbits). The
/// verified stretch must cover at least p indices, otherwise Aperiodic. With
/// require_from_start only n1 = 0 is accepted. InputError if the orbit has
/// fewer than p + 2 points or p == 0.
template <class Real>
PeriodResult detect_period(const BasicOrbit<Real>& orbit, std::size_t p, double tol,
                           bool require_from_start = false);

enum class ProductStatus { Converges, DivergesToZero, DivergesToInfinity, Undecided };

struct ProductOptions {
  double tol = 1e-14;
  std::size_t cap = 1'000'000;
  std::size_t window = 256;
};

struct ProductVerdict {
  ProductStatus status;
  double limit;        // exp(log_partial); the limit when status == Converges
  double log_partial;  // sum of log(1 + term_k) over the terms consumed
  std::size_t terms;
};

/// Decides convergence of prod (1 + term(k)), k = 0, 1, ... Terms must be > -1
/// (InputError otherwise).
///  - converges when a term's log-factor is below tol and the geometric tail
///    bound |l_k| r / (1 - r), r = |l_k / l_{k-1}|, is below tol;
///  - diverges when |log partial| passes 700, or when two consecutive windows
///    of log-factors share one sign without decaying (linear drift);
///  - undecided once the cap is reached.
ProductVerdict product_converges(const std::function<double(std::size_t)>& term,
                                 const ProductOptions& opts = {});

inline constexpr double kDivergenceThreshold = 1e-6;

struct ComparisonReport {
  std::size_t n_max = 0;
  Rank rank = Rank::Two;
  double max_rel_error_x = 0.0;
  double max_rel_error_y = 0.0;
  std::optional<std::size_t> first_divergence_index;
  /// False when an exact comparison had to fall back to a float closed form
  /// (rank 2 with irrational eigenvalues).
  bool exact_closed_form = false;
};

/// Direct iteration against the rank-appropriate closed form for n = 0..n_max.
ComparisonReport compare(const Coefficients& params, const State<double>& init,
                         std::size_t n_max, double eps_rank = kDefaultRankEps);
ComparisonReport compare(const ExactCoefficients& params, const State<Rational>& init,
                         std::size_t n_max);

/// Closed-form orbit 0..n_max (rank dispatch).
Orbit closed_orbit(const Coefficients& params, const State<double>& init, std::size_t n_max,
                   double eps_rank = kDefaultRankEps);
ExactOrbit closed_orbit(const ExactCoefficients& params, const State<Rational>& init,
                        std::size_t n_max);

}  // namespace twoperiodic
