#include "twoperiodic/rank2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace twoperiodic {

namespace {

// Entries of A = ((alpha, beta), (gamma, delta)) and the eigen-quantities in
// cancellation-free form. s = sqrt(D) = lambda1 - lambda2.
template <class Real>
struct Parts {
  Real alpha, beta, gamma, delta;
  Real s;
  Real lambda1, lambda2;
  Real l1a;  // lambda1 - alpha > 0
  Real l2a;  // lambda2 - alpha < 0; (lambda1 - alpha)(lambda2 - alpha) = -beta gamma
};

template <class Real>
Parts<Real> parts(const BasicCoefficients<Real>& p, double eps_rank) {
  if (rank_of(p, eps_rank) != Rank::Two) {
    throw BranchError("rank-1 composed matrix: lambda2 vanishes, use the rank-1 solver");
  }
  const Matrix2<Real> a = composed_matrix(p);
  Parts<Real> q{a.m11, a.m12, a.m21, a.m22, {}, {}, {}, {}, {}};
  const Real diff = q.alpha - q.delta;
  const Real disc = diff * diff + 4 * q.beta * q.gamma;
  if constexpr (is_exact_v<Real>) {
    const auto root = exact_sqrt(disc);
    if (!root) {
      throw DomainError("lambda", "eigenvalues are irrational (discriminant " + format_scalar(disc) +
                                      " is not a rational square); exact evaluation unavailable");
    }
    q.s = *root;
  } else {
    q.s = std::sqrt(disc);
  }
  q.lambda1 = (q.alpha + q.delta + q.s) / 2;
  if (q.delta >= q.alpha) {
    q.l1a = (q.delta - q.alpha + q.s) / 2;
  } else {
    q.l1a = 2 * q.beta * q.gamma / (q.alpha - q.delta + q.s);
  }
  q.lambda2 = composed_det(p) / q.lambda1;
  q.l2a = -(q.beta * q.gamma) / q.l1a;
  return q;
}

template <class Real>
SpectralData<Real> constants(const Parts<Real>& q, const State<Real>& init) {
  const Real& u0 = init.x;
  const Real& v0 = init.y;
  SpectralData<Real> sd;
  sd.lambda1 = q.lambda1;
  sd.lambda2 = q.lambda2;
  sd.C1 = q.beta / q.s * (q.gamma / q.l1a * u0 + v0);
  sd.C2 = q.beta / q.s * (q.gamma / q.l2a * u0 + v0);
  sd.C3 = (q.gamma * u0 + q.l1a * v0) / q.s;
  sd.C4 = (q.gamma * u0 + q.l2a * v0) / q.s;
  sd.Q = q.beta / q.l1a;
  return sd;
}

// Calls f(k, fx, fy) for k = 1..m with the k-th factor of the even (odd == false)
// or odd product forms of x and y. With t = lambda2 / lambda1 the sequences are
// carried scaled by lambda1^k: u_{2k} = lambda1^k (C1 - C2 t^k).
template <class Real, class F>
void walk_factors(const BasicCoefficients<Real>& p, const SpectralData<Real>& sd, std::size_t m,
                  bool odd, F&& f) {
  const Real t = sd.lambda2 / sd.lambda1;
  Real tk = 1;
  Real su_prev = sd.C1 - sd.C2;  // k - 1 = 0
  Real sv_prev = sd.C3 - sd.C4;
  for (std::size_t k = 1; k <= m; ++k) {
    tk *= t;
    const Real su = sd.C1 - sd.C2 * tk;
    const Real sv = sd.C3 - sd.C4 * tk;
    const Real q_prev = su_prev / sv_prev;  // q_{k-1} = u_{2k-2} / v_{2k-2}
    const Real s_prev = sv_prev / su_prev;  // s_{k-1}
    const Real pk = sd.lambda1 * su / sv_prev;  // u_{2k} / v_{2k-2}
    const Real rk = sd.lambda1 * sv / su_prev;  // v_{2k} / u_{2k-2}
    if (!odd) {
      f(k, Real(pk / ((p.b0() * q_prev + p.a0()) * (p.d0() * q_prev + p.c0()))),
        Real(rk / ((p.d0() + p.c0() * s_prev) * (p.b0() + p.a0() * s_prev))));
    } else {
      const Real qk = su / sv;
      const Real sk = sv / su;
      f(k, Real((p.b0() * qk + p.a0()) * (p.d0() * q_prev + p.c0()) / pk),
        Real((p.d0() + p.c0() * sk) * (p.b0() + p.a0() * s_prev) / rk));
    }
    su_prev = su;
    sv_prev = sv;
  }
}

SignedLog signed_log(double v) {
  return {v > 0 ? 1 : (v < 0 ? -1 : 0), std::log(std::fabs(v))};
}

}  // namespace

template <class Real>
Eigenvalues<Real> eigenvalues(const BasicCoefficients<Real>& p, double eps_rank) {
  const Parts<Real> q = parts(p, eps_rank);
  return {q.lambda1, q.lambda2};
}

template <class Real>
Matrix2<Real> eigenvector_matrix(const BasicCoefficients<Real>& p, double eps_rank) {
  const Parts<Real> q = parts(p, eps_rank);
  return {q.beta / q.l1a, q.beta / q.l2a, Real(1), Real(1)};
}

template <class Real>
SpectralData<Real> spectral_constants(const BasicCoefficients<Real>& p, const State<Real>& init,
                                      double eps_rank) {
  return constants(parts(p, eps_rank), init);
}

UV<Rational> rank2_uv(const ExactCoefficients& p, const State<Rational>& init, std::size_t n) {
  const SpectralData<Rational> sd = spectral_constants(p, init);
  const long m = static_cast<long>(n / 2);
  const Rational l1m = pow_int(sd.lambda1, m);
  const Rational l2m = pow_int(sd.lambda2, m);
  if (n % 2 == 0) {
    return {sd.C1 * l1m - sd.C2 * l2m, sd.C3 * l1m - sd.C4 * l2m};
  }
  return {(p.b0() * sd.C1 + p.a0() * sd.C3) * l1m - (p.b0() * sd.C2 + p.a0() * sd.C4) * l2m,
          (p.d0() * sd.C1 + p.c0() * sd.C3) * l1m - (p.d0() * sd.C2 + p.c0() * sd.C4) * l2m};
}

LogUV rank2_uv(const Coefficients& p, const State<double>& init, std::size_t n,
               double eps_rank) {
  const SpectralData<double> sd = spectral_constants(p, init, eps_rank);
  const std::size_t m = n / 2;
  const double tm = std::pow(sd.lambda2 / sd.lambda1, static_cast<double>(m));
  const double log_l1m = static_cast<double>(m) * std::log(sd.lambda1);
  double su = 0.0;
  double sv = 0.0;
  if (n % 2 == 0) {
    su = sd.C1 - sd.C2 * tm;
    sv = sd.C3 - sd.C4 * tm;
  } else {
    su = (p.b0() * sd.C1 + p.a0() * sd.C3) - (p.b0() * sd.C2 + p.a0() * sd.C4) * tm;
    sv = (p.d0() * sd.C1 + p.c0() * sd.C3) - (p.d0() * sd.C2 + p.c0() * sd.C4) * tm;
  }
  SignedLog u = signed_log(su);
  SignedLog v = signed_log(sv);
  u.log_abs += log_l1m;
  v.log_abs += log_l1m;
  return {u, v};
}

LogState rank2_log_solution(const Coefficients& p, const State<double>& init, std::size_t n,
                            double eps_rank) {
  const SpectralData<double> sd = spectral_constants(p, init, eps_rank);
  if (n == 0) return {std::log(init.x), std::log(init.y)};
  const bool odd = n % 2 == 1;
  const State<double> base = odd ? step(p, 0, init) : init;
  double lx = std::log(base.x);
  double ly = std::log(base.y);
  walk_factors(p, sd, n / 2, odd, [&](std::size_t, double fx, double fy) {
    lx += std::log(fx);
    ly += std::log(fy);
  });
  return {lx, ly};
}

template <class Real>
State<Real> rank2_solution(const BasicCoefficients<Real>& p, const State<Real>& init,
                           std::size_t n, double eps_rank) {
  if constexpr (is_exact_v<Real>) {
    const SpectralData<Real> sd = spectral_constants(p, init, eps_rank);
    if (n == 0) return init;
    const bool odd = n % 2 == 1;
    State<Real> out = odd ? step(p, 0, init) : init;
    walk_factors(p, sd, n / 2, odd, [&](std::size_t, const Real& fx, const Real& fy) {
      out.x *= fx;
      out.y *= fy;
    });
    return out;
  } else {
    if (n == 0) {
      (void)parts(p, eps_rank);
      return init;
    }
    const LogState ls = rank2_log_solution(p, init, n, eps_rank);
    return {std::exp(ls.log_x), std::exp(ls.log_y)};
  }
}

template <class Real>
std::vector<State<Real>> rank2_orbit(const BasicCoefficients<Real>& p, const State<Real>& init,
                                     std::size_t n_max, double eps_rank) {
  const SpectralData<Real> sd = spectral_constants(p, init, eps_rank);
  std::vector<State<Real>> out(n_max + 1, init);
  if (n_max == 0) return out;
  const State<Real> s1 = step(p, 0, init);
  for (const bool odd : {false, true}) {
    const State<Real> base = odd ? s1 : init;
    const std::size_t first = odd ? 1 : 0;
    if (first > n_max) continue;
    const std::size_t m = (n_max - first) / 2;
    if constexpr (is_exact_v<Real>) {
      State<Real> cur = base;
      out[first] = cur;
      walk_factors(p, sd, m, odd, [&](std::size_t k, const Real& fx, const Real& fy) {
        cur.x *= fx;
        cur.y *= fy;
        out[first + 2 * k] = cur;
      });
    } else {
      double lx = std::log(base.x);
      double ly = std::log(base.y);
      out[first] = base;
      walk_factors(p, sd, m, odd, [&](std::size_t k, double fx, double fy) {
        lx += std::log(fx);
        ly += std::log(fy);
        out[first + 2 * k] = {std::exp(lx), std::exp(ly)};
      });
    }
  }
  return out;
}

Rank2Witness criterion_delta(const Coefficients& p, double eps_rank) {
  const Parts<double> q = parts(p, eps_rank);
  const double Q = q.beta / q.l1a;
  const double scale = (p.b0() * Q + p.a0()) * (p.d0() * Q + p.c0());
  return {q.lambda1, q.lambda2, Q, q.lambda1 * Q - scale, scale};
}

LimitRatios limit_ratios(const Coefficients& p, double eps_rank) {
  const Parts<double> q = parts(p, eps_rank);
  const double Q = q.beta / q.l1a;  // lim q_k = C1 / C3
  const double S1 = (p.b0() * Q + p.a0()) * (p.d0() * Q + p.c0());
  const double L1 = (q.lambda1 * Q - S1) / S1;
  const double Qi = q.l1a / q.beta;  // lim s_k = C3 / C1
  const double S2 = (p.b0() + p.a0() * Qi) * (p.d0() + p.c0() * Qi);
  const double L2 = (q.lambda1 * Qi - S2) / S2;
  return {L1, L2};
}

Classification classify_rank2(const Coefficients& p, double tol, double eps_rank) {
  const Rank2Witness w = criterion_delta(p, eps_rank);
  Kind kind = Kind::ConvergesToTwoPeriodic;
  if (w.delta < -tol * w.scale) {
    kind = Kind::VanishEvenBlowOdd;
  } else if (w.delta > tol * w.scale) {
    kind = Kind::BlowEvenVanishOdd;
  }
  return {kind, Rank::Two, w, std::nullopt, std::nullopt};
}

double fixed_point_residual(const Coefficients& p, double x_even, double x_odd, double y_even,
                            double y_odd) {
  const auto rel = [](double lhs, double rhs) { return std::fabs(lhs - rhs) / std::fabs(lhs); };
  return std::max({rel(x_odd, p.a0() / x_even + p.b0() / y_even),
                   rel(y_odd, p.c0() / x_even + p.d0() / y_even),
                   rel(x_even, p.a1() / x_odd + p.b1() / y_odd),
                   rel(y_even, p.c1() / x_odd + p.d1() / y_odd)});
}

LimitCycle limit_cycle(const Coefficients& p, const State<double>& init, const CycleOptions& opts) {
  const Classification cls = classify_rank2(p, opts.class_tol, opts.eps_rank);
  if (cls.kind != Kind::ConvergesToTwoPeriodic) {
    throw BranchError(std::string("limit_cycle requires ConvergesToTwoPeriodic, got ") +
                      std::string(kind_name(cls.kind)));
  }
  const Parts<double> q = parts(p, opts.eps_rank);
  const SpectralData<double> sd = constants(q, init);
  const double ratio = std::fabs(sd.lambda2 / sd.lambda1);
  const double tail_factor = ratio / (1.0 - ratio);
  const double target = std::log1p(std::get<Rank2Witness>(cls.witness).delta /
                                    std::get<Rank2Witness>(cls.witness).scale);

  const double t = sd.lambda2 / sd.lambda1;
  const State<double> s1 = step(p, 0, init);
  double lx_even = std::log(init.x);
  double ly_even = std::log(init.y);
  double lx_odd = std::log(s1.x);
  double ly_odd = std::log(s1.y);

  double tk = 1.0;
  double su_prev = sd.C1 - sd.C2;
  double sv_prev = sd.C3 - sd.C4;
  for (std::size_t k = 1; k <= opts.cap; ++k) {
    tk *= t;
    const double su = sd.C1 - sd.C2 * tk;
    const double sv = sd.C3 - sd.C4 * tk;
    const double q_prev = su_prev / sv_prev;
    const double s_prev = sv_prev / su_prev;
    const double qk = su / sv;
    const double sk = sv / su;
    const double log_pk = std::log(sd.lambda1 * su / sv_prev);
    const double log_rk = std::log(sd.lambda1 * sv / su_prev);
    const double fx_even = log_pk - std::log(p.b0() * q_prev + p.a0()) - std::log(p.d0() * q_prev + p.c0());
    const double fx_odd = std::log(p.b0() * qk + p.a0()) + std::log(p.d0() * q_prev + p.c0()) - log_pk;
    const double fy_even = log_rk - std::log(p.d0() + p.c0() * s_prev) - std::log(p.b0() + p.a0() * s_prev);
    const double fy_odd = std::log(p.d0() + p.c0() * sk) + std::log(p.b0() + p.a0() * s_prev) - log_rk;
    lx_even += fx_even;
    lx_odd += fx_odd;
    ly_even += fy_even;
    ly_odd += fy_odd;
    const double dev = std::max({std::fabs(fx_even - target), std::fabs(fx_odd + target),
                                 std::fabs(fy_even - target), std::fabs(fy_odd + target)});
    if (dev < opts.tol && dev * tail_factor < opts.tol) {
      LimitCycle c{std::exp(lx_even), std::exp(lx_odd), std::exp(ly_even), std::exp(ly_odd), 0.0, k};
      c.residual = fixed_point_residual(p, c.x_even, c.x_odd, c.y_even, c.y_odd);
      return c;
    }
    su_prev = su;
    sv_prev = sv;
  }
  throw ConvergenceError("limit_cycle: tail bound not reached within " + std::to_string(opts.cap) +
                         " terms");
}

template Eigenvalues<double> eigenvalues(const Coefficients&, double);
template Eigenvalues<Rational> eigenvalues(const ExactCoefficients&, double);
template Matrix2<double> eigenvector_matrix(const Coefficients&, double);
template Matrix2<Rational> eigenvector_matrix(const ExactCoefficients&, double);
template SpectralData<double> spectral_constants(const Coefficients&, const State<double>&, double);
template SpectralData<Rational> spectral_constants(const ExactCoefficients&,
                                                   const State<Rational>&, double);
template State<double> rank2_solution(const Coefficients&, const State<double>&, std::size_t,
                                      double);
template State<Rational> rank2_solution(const ExactCoefficients&, const State<Rational>&,
                                        std::size_t, double);
template std::vector<State<double>> rank2_orbit(const Coefficients&, const State<double>&,
                                                std::size_t, double);
template std::vector<State<Rational>> rank2_orbit(const ExactCoefficients&, const State<Rational>&,
                                                  std::size_t, double);

}  // namespace twoperiodic
