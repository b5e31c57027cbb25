#pragma once

// Reference computations for the tests. Deliberately share no code with the
// library: plain long double / mpq_class loops written straight from the
// definitions of the system and the (u, v) products.

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "twoperiodic/core.hpp"

namespace oracle {

using ld = long double;

// (a, b, c, d) of parity 0 and 1.
struct P {
  ld a0, a1, b0, b1, c0, c1, d0, d1;

  ld a(std::size_t n) const { return n % 2 ? a1 : a0; }
  ld b(std::size_t n) const { return n % 2 ? b1 : b0; }
  ld c(std::size_t n) const { return n % 2 ? c1 : c0; }
  ld d(std::size_t n) const { return n % 2 ? d1 : d0; }

  twoperiodic::Coefficients lib() const {
    return {double(a0), double(a1), double(b0), double(b1),
            double(c0), double(c1), double(d0), double(d1)};
  }
};

struct XY {
  ld x, y;
};

inline std::vector<XY> iterate(const P& p, XY s, std::size_t n_max) {
  std::vector<XY> out{s};
  for (std::size_t n = 0; n < n_max; ++n) {
    s = {p.a(n) / s.x + p.b(n) / s.y, p.c(n) / s.x + p.d(n) / s.y};
    out.push_back(s);
  }
  return out;
}

// log-space iteration: log x' = log(a e^{-lx} + b e^{-ly})
inline std::vector<XY> log_iterate(const P& p, XY logs, std::size_t n_max) {
  auto lae = [](ld u, ld v) {
    const ld m = std::max(u, v);
    return m + std::log(std::exp(u - m) + std::exp(v - m));
  };
  std::vector<XY> out{logs};
  for (std::size_t n = 0; n < n_max; ++n) {
    const XY s = out.back();
    out.push_back({lae(std::log(p.a(n)) - s.x, std::log(p.b(n)) - s.y),
                   lae(std::log(p.c(n)) - s.x, std::log(p.d(n)) - s.y)});
  }
  return out;
}

struct QP {
  mpq_class a0, a1, b0, b1, c0, c1, d0, d1;

  const mpq_class& a(std::size_t n) const { return n % 2 ? a1 : a0; }
  const mpq_class& b(std::size_t n) const { return n % 2 ? b1 : b0; }
  const mpq_class& c(std::size_t n) const { return n % 2 ? c1 : c0; }
  const mpq_class& d(std::size_t n) const { return n % 2 ? d1 : d0; }

  twoperiodic::ExactCoefficients lib() const { return {a0, a1, b0, b1, c0, c1, d0, d1}; }
};

inline std::vector<std::pair<mpq_class, mpq_class>> iterate_exact(const QP& p, mpq_class x,
                                                                  mpq_class y,
                                                                  std::size_t n_max) {
  std::vector<std::pair<mpq_class, mpq_class>> out{{x, y}};
  for (std::size_t n = 0; n < n_max; ++n) {
    mpq_class nx = p.a(n) / x + p.b(n) / y;
    mpq_class ny = p.c(n) / x + p.d(n) / y;
    x = nx;
    y = ny;
    out.emplace_back(x, y);
  }
  return out;
}

// u_n = x_0..x_n * y_0..y_{n-1}, v_n = x_0..x_{n-1} * y_0..y_n
inline std::vector<std::pair<mpq_class, mpq_class>> uv_products(
    const std::vector<std::pair<mpq_class, mpq_class>>& orbit) {
  std::vector<std::pair<mpq_class, mpq_class>> out;
  mpq_class px = 1, py = 1;  // products over 0..n-1
  for (const auto& [x, y] : orbit) {
    out.emplace_back(px * x * py, px * py * y);
    px *= x;
    py *= y;
  }
  return out;
}

// A = A1 A0 with A_n = ((b_n, a_n), (d_n, c_n)).
struct M2 {
  ld m11, m12, m21, m22;
};

inline M2 composed(const P& p) {
  return {p.b1 * p.b0 + p.a1 * p.d0, p.b1 * p.a0 + p.a1 * p.c0,
          p.d1 * p.b0 + p.c1 * p.d0, p.d1 * p.a0 + p.c1 * p.c0};
}

// eigenvalues by the textbook quadratic formula in long double
inline std::pair<ld, ld> eig(const M2& m) {
  const ld t = m.m11 + m.m22;
  const ld det = m.m11 * m.m22 - m.m12 * m.m21;
  const ld s = std::sqrt(t * t - 4 * det);
  const ld l1 = (t + s) / 2;
  return {l1, det / l1};
}

// Delta = lambda1 Q - (b0 Q + a0)(d0 Q + c0) with Q = m12 / (lambda1 - m11),
// and its scale S = (b0 Q + a0)(d0 Q + c0).
inline std::pair<ld, ld> delta(const P& p) {
  const M2 m = composed(p);
  const ld l1 = eig(m).first;
  const ld q = m.m12 / (l1 - m.m11);
  const ld s = (p.b0 * q + p.a0) * (p.d0 * q + p.c0);
  return {l1 * q - s, s};
}

inline ld rank1_rho(const P& p) {
  const M2 m = composed(p);
  const ld k = m.m21 / m.m11;
  const ld mu = m.m11 + k * m.m12;
  return k * mu / ((p.b0 + k * p.a0) * (p.d0 + k * p.c0));
}

// Root of f on [lo, hi] by bisection in log(x); f(lo), f(hi) of opposite sign.
inline ld bisect(const std::function<ld(ld)>& f, ld lo, ld hi, int iters = 200) {
  ld flo = f(lo);
  for (int i = 0; i < iters; ++i) {
    const ld mid = std::sqrt(lo * hi);
    const ld fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return std::sqrt(lo * hi);
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  ld log_uniform(ld lo, ld hi) {
    std::uniform_real_distribution<double> u(std::log(double(lo)), std::log(double(hi)));
    return std::exp(ld(u(gen)));
  }
  ld uniform(ld lo, ld hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }
  mpq_class rational(long max) {
    mpq_class q(integer(1, max), integer(1, max));
    q.canonicalize();
    return q;
  }

  P params(ld lo = 0.1L, ld hi = 10.0L) {
    // round to double so that library and oracle see identical inputs
    auto r = [&] { return ld(double(log_uniform(lo, hi))); };
    return {r(), r(), r(), r(), r(), r(), r(), r()};
  }
  QP exact_params(long max) {
    return {rational(max), rational(max), rational(max), rational(max),
            rational(max), rational(max), rational(max), rational(max)};
  }
};

// Rank-2 instance with Delta = 0: scan b1 on a log grid for a sign change of
// Delta and bisect. Returns false when this draw has none.
inline bool delta_zero_instance(Rng& rng, P& out) {
  P p = rng.params();
  auto f = [&](ld b1) {
    P q = p;
    q.b1 = b1;
    const auto [d, s] = delta(q);
    return d / s;
  };
  ld prev = 1e-3L;
  ld fprev = f(prev);
  for (int i = 1; i <= 120; ++i) {
    const ld cur = std::pow(10.0L, -3.0L + 6.0L * i / 120.0L);
    const ld fcur = f(cur);
    if ((fcur < 0) != (fprev < 0)) {
      p.b1 = double(bisect(f, prev, cur));
      out = p;
      return true;
    }
    prev = cur;
    fprev = fcur;
  }
  return false;
}

inline ld rel(ld got, ld want) { return std::fabs(got - want) / std::fabs(want); }

}  // namespace oracle
