#include "twoperiodic/analysis.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace twoperiodic {

Classification classify(const Coefficients& params, const ClassifyOptions& opts) {
  if (rank_of(params, opts.eps_rank) == Rank::One) {
    return classify_rank1(params, opts.tol_class, opts.eps_rank);
  }
  Classification cls = classify_rank2(params, opts.tol_class, opts.eps_rank);
  if (cls.kind == Kind::ConvergesToTwoPeriodic) {
    cls.cycle = limit_cycle(params, {1.0, 1.0},
                            {opts.tol_cycle, opts.cycle_cap, opts.tol_class, opts.eps_rank});
  }
  return cls;
}

Classification classify(const ExactCoefficients& params, const ClassifyOptions& opts) {
  if (rank_of(params) == Rank::One) return classify_rank1(params);
  // Exactly rank 2: only an exactly singular float image may be called rank 1.
  ClassifyOptions float_opts = opts;
  float_opts.eps_rank = 0.0;
  return classify(params.to_double(), float_opts);
}

template <class Real>
PeriodResult detect_period(const BasicOrbit<Real>& orbit, std::size_t p, double tol,
                           bool require_from_start) {
  if (p == 0) throw InputError("detect_period: period must be >= 1");
  if (orbit.size() < p + 2) {
    throw InputError("detect_period: orbit has " + std::to_string(orbit.size()) +
                     " points, need at least " + std::to_string(p + 2));
  }
  const auto matches = [&](std::size_t n) {
    const auto& a = orbit[n];
    const auto& b = orbit[n + p];
    if constexpr (is_exact_v<Real>) {
      (void)tol;
      return a.x == b.x && a.y == b.y;
    } else {
      return std::fabs(b.x - a.x) <= tol * std::fabs(a.x) &&
             std::fabs(b.y - a.y) <= tol * std::fabs(a.y);
    }
  };
  const std::size_t last = orbit.size() - 1 - p;  // N - p
  std::size_t n1 = 0;
  for (std::size_t n = last + 1; n-- > 0;) {
    if (!matches(n)) {
      n1 = n + 1;
      break;
    }
  }
  if (n1 == 0) return {PeriodStatus::Periodic, 0};
  if (require_from_start || n1 > last || last - n1 + 1 < p) return {PeriodStatus::Aperiodic, n1};
  return {PeriodStatus::EventuallyPeriodic, n1};
}

template PeriodResult detect_period(const Orbit&, std::size_t, double, bool);
template PeriodResult detect_period(const ExactOrbit&, std::size_t, double, bool);

ProductVerdict product_converges(const std::function<double(std::size_t)>& term,
                                 const ProductOptions& opts) {
  constexpr double kLogOverflow = 700.0;
  double sum = 0.0;
  double prev_mag = std::numeric_limits<double>::quiet_NaN();

  // Window statistics for linear-drift detection.
  double window_abs = 0.0;
  std::size_t window_pos = 0;
  std::size_t window_neg = 0;
  double prev_window_mean = -1.0;
  int prev_window_sign = 0;

  for (std::size_t k = 0; k < opts.cap; ++k) {
    const double a = term(k);
    if (!(a > -1.0)) {
      throw InputError("product_converges: term " + std::to_string(k) + " is not > -1");
    }
    const double l = std::log1p(a);
    sum += l;
    const double mag = std::fabs(l);

    if (std::fabs(sum) > kLogOverflow) {
      return {sum > 0 ? ProductStatus::DivergesToInfinity : ProductStatus::DivergesToZero,
              std::exp(sum), sum, k + 1};
    }
    if (k >= 1) {
      double r = 0.0;
      if (prev_mag > 0.0) {
        r = mag / prev_mag;
      } else if (mag > 0.0) {
        r = std::numeric_limits<double>::infinity();
      }
      if (mag < opts.tol && r < 1.0 && mag * r / (1.0 - r) < opts.tol) {
        return {ProductStatus::Converges, std::exp(sum), sum, k + 1};
      }
    }
    prev_mag = mag;

    window_abs += mag;
    if (l > 0) ++window_pos;
    if (l < 0) ++window_neg;
    if ((k + 1) % opts.window == 0) {
      const double mean = window_abs / static_cast<double>(opts.window);
      int sign = 0;
      if (window_pos == opts.window) sign = 1;
      if (window_neg == opts.window) sign = -1;
      if (sign != 0 && sign == prev_window_sign && mean >= 0.99 * prev_window_mean) {
        return {sign > 0 ? ProductStatus::DivergesToInfinity : ProductStatus::DivergesToZero,
                std::exp(sum), sum, k + 1};
      }
      prev_window_mean = mean;
      prev_window_sign = sign;
      window_abs = 0.0;
      window_pos = 0;
      window_neg = 0;
    }
  }
  return {ProductStatus::Undecided, std::exp(sum), sum, opts.cap};
}

Orbit closed_orbit(const Coefficients& params, const State<double>& init, std::size_t n_max,
                   double eps_rank) {
  std::vector<State<double>> states;
  if (rank_of(params, eps_rank) == Rank::One) {
    states.reserve(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) states.push_back(rank1_solution(params, init, n, eps_rank));
  } else {
    states = rank2_orbit(params, init, n_max, eps_rank);
  }
  Orbit out;
  for (std::size_t n = 0; n < states.size(); ++n) {
    const auto& s = states[n];
    if (!std::isfinite(s.x) || !std::isfinite(s.y) || s.x == 0.0 || s.y == 0.0) {
      throw TruncationError(n, std::move(out));
    }
    out.append(s);
  }
  return out;
}

ExactOrbit closed_orbit(const ExactCoefficients& params, const State<Rational>& init,
                        std::size_t n_max) {
  ExactOrbit out;
  if (rank_of(params) == Rank::One) {
    for (std::size_t n = 0; n <= n_max; ++n) out.append(rank1_solution(params, init, n));
  } else {
    for (const auto& s : rank2_orbit(params, init, n_max)) out.append(s);
  }
  return out;
}

namespace {

template <class Real>
double rel_error(const Real& ref, const Real& got) {
  if constexpr (is_exact_v<Real>) {
    const Rational diff = abs(Rational(got - ref));
    return Rational(diff / abs(ref)).get_d();
  } else {
    return std::fabs(got - ref) / std::fabs(ref);
  }
}

template <class RefOrbit, class GotOrbit>
void accumulate(ComparisonReport& rep, const RefOrbit& ref, const GotOrbit& got) {
  for (std::size_t n = 0; n < ref.size(); ++n) {
    double ex = 0.0;
    double ey = 0.0;
    if constexpr (std::is_same_v<RefOrbit, GotOrbit>) {
      ex = rel_error(ref[n].x, got[n].x);
      ey = rel_error(ref[n].y, got[n].y);
    } else {
      ex = rel_error(to_double(ref[n].x), got[n].x);
      ey = rel_error(to_double(ref[n].y), got[n].y);
    }
    rep.max_rel_error_x = std::fmax(rep.max_rel_error_x, ex);
    rep.max_rel_error_y = std::fmax(rep.max_rel_error_y, ey);
    if (!rep.first_divergence_index &&
        (ex > kDivergenceThreshold || ey > kDivergenceThreshold)) {
      rep.first_divergence_index = n;
    }
  }
}

}  // namespace

ComparisonReport compare(const Coefficients& params, const State<double>& init,
                         std::size_t n_max, double eps_rank) {
  ComparisonReport rep;
  rep.n_max = n_max;
  rep.rank = rank_of(params, eps_rank);
  const Orbit direct = simulate(params, init, n_max);
  const Orbit closed = closed_orbit(params, init, n_max, eps_rank);
  accumulate(rep, direct, closed);
  return rep;
}

ComparisonReport compare(const ExactCoefficients& params, const State<Rational>& init,
                         std::size_t n_max) {
  ComparisonReport rep;
  rep.n_max = n_max;
  rep.rank = rank_of(params);
  const ExactOrbit direct = simulate(params, init, n_max);
  try {
    const ExactOrbit closed = closed_orbit(params, init, n_max);
    rep.exact_closed_form = true;
    accumulate(rep, direct, closed);
  } catch (const DomainError& e) {
    if (e.component() != "lambda") throw;
    const Orbit closed = closed_orbit(params.to_double(), State<double>{init.x.get_d(), init.y.get_d()},
                                      n_max, 0.0);
    rep.exact_closed_form = false;
    accumulate(rep, direct, closed);
  }
  return rep;
}

}  // namespace twoperiodic
