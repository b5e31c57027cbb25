#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>

#include "twoperiodic/scalar.hpp"
#include "twoperiodic/transfer.hpp"

namespace twoperiodic {

inline constexpr double kDefaultClassTol = 1e-9;
inline constexpr double kDefaultCycleTol = 1e-12;
inline constexpr std::size_t kDefaultCycleCap = 1'000'000;

/// Long-run behaviour of every positive solution for a parameter set.
enum class Kind {
  VanishEvenBlowOdd,       // x_{2n}, y_{2n} -> 0 and x_{2n+1}, y_{2n+1} -> inf
  BlowEvenVanishOdd,       // the reverse
  ExactTwoPeriodic,        // rank 1, rho == 1
  ConvergesToTwoPeriodic,  // rank 2, delta == 0
};

std::string_view kind_name(Kind k) noexcept;
std::optional<Kind> kind_from_name(std::string_view name) noexcept;

/// Rank-1 constants: v_{2m} = K u_{2m}, u_{2m+2} = mu u_{2m}, x_{2m+2} = rho x_{2m}.
template <class Real>
struct Rank1Data {
  Real K;
  Real mu;
  Real rho;
};

/// Initial-condition-free part of the rank-2 analysis.
struct Rank2Witness {
  double lambda1;
  double lambda2;
  double Q;      // limit of u_{2k} / v_{2k}
  double delta;  // lambda1 Q - (b0 Q + a0)(d0 Q + c0)
  double scale;  // (b0 Q + a0)(d0 Q + c0)
};

/// Limits of the even/odd subsequences in the convergent rank-2 case.
struct LimitCycle {
  double x_even;
  double x_odd;
  double y_even;
  double y_odd;
  double residual;  // max relative defect of the two-periodic fixed-point equations
  std::size_t terms;
};

struct Classification {
  Kind kind;
  Rank rank;
  std::variant<Rank1Data<double>, Rank2Witness> witness;
  /// Set when classified in exact mode on the rank-1 branch.
  std::optional<Rank1Data<Rational>> exact_rank1;
  /// Representative cycle (probe init (1, 1)) for ConvergesToTwoPeriodic.
  std::optional<LimitCycle> cycle;

  /// K for rank 1, Q for rank 2.
  double k_or_q() const;
  /// rho for rank 1, delta for rank 2.
  double rho_or_delta() const;
};

}  // namespace twoperiodic
