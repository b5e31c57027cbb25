#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "twoperiodic/errors.hpp"
#include "twoperiodic/rank2.hpp"

using namespace twoperiodic;

namespace {

const Coefficients kSample(2, 1, 1, 2, 4, 3, 3, 1);  // A = ((5,8),(10,14))
const ExactCoefficients kRational(1, 1, 1, 2, 1, 3, 3, 1);  // A = ((5,3),(10,4)), lambda = 10, -1

oracle::P sample_oracle() { return {2, 1, 1, 2, 4, 3, 3, 1}; }

oracle::P delta_zero(std::uint64_t seed) {
  oracle::Rng rng(seed);
  oracle::P p{};
  while (!oracle::delta_zero_instance(rng, p)) {
  }
  return p;
}

}  // namespace

TEST_CASE("eigenvalues of the sample instance") {
  const auto e = eigenvalues(kSample);
  CHECK(e.lambda1 == doctest::Approx((19 + std::sqrt(401.0)) / 2).epsilon(1e-15));
  CHECK(e.lambda2 == doctest::Approx((19 - std::sqrt(401.0)) / 2).epsilon(1e-13));
  CHECK(e.lambda1 + e.lambda2 == doctest::Approx(19.0).epsilon(1e-14));
  CHECK(e.lambda1 * e.lambda2 == doctest::Approx(-10.0).epsilon(1e-14));

  const auto ex = eigenvalues(kRational);
  CHECK(ex.lambda1 == 10);
  CHECK(ex.lambda2 == -1);
  CHECK_THROWS_AS(eigenvalues(ExactCoefficients(2, 1, 1, 2, 4, 3, 3, 1)), DomainError);
  CHECK_THROWS_AS(eigenvalues(Coefficients::constant(1.0)), BranchError);
}

TEST_CASE("equal diagonal case") {
  // alpha = delta = 4, beta = 7, gamma = 2.5
  const Coefficients p(2, 1, 1, 3, 1, 1, 1, 1.5);
  const auto e = eigenvalues(p);
  CHECK(e.lambda1 == doctest::Approx(4 + std::sqrt(17.5)).epsilon(1e-14));
  CHECK(e.lambda2 == doctest::Approx(4 - std::sqrt(17.5)).epsilon(1e-13));
}

TEST_CASE("Vieta and eigenvector residuals on random instances") {
  oracle::Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto op = rng.params();
    const auto p = op.lib();
    const auto e = eigenvalues(p);
    const auto [l1, l2] = oracle::eig(oracle::composed(op));
    CHECK(oracle::rel(e.lambda1, l1) < 1e-13);
    CHECK(std::fabs(e.lambda2) < e.lambda1);
    const auto a = composed_matrix(p);
    CHECK(oracle::rel(e.lambda1 + e.lambda2, a.trace()) < 1e-12);
    CHECK(oracle::rel(e.lambda1 * e.lambda2, composed_det(p)) < 1e-12);
  }
}

TEST_CASE("spectral constants reconstruct u and v") {
  const auto sd = spectral_constants(kSample, State<double>{1, 1});
  CHECK(sd.C1 - sd.C2 == doctest::Approx(1.0));
  CHECK(sd.C3 - sd.C4 == doctest::Approx(1.0));
  CHECK(sd.C1 * sd.lambda1 - sd.C2 * sd.lambda2 == doctest::Approx(13.0));
  CHECK(sd.C3 * sd.lambda1 - sd.C4 * sd.lambda2 == doctest::Approx(24.0));
  CHECK(sd.Q == doctest::Approx(8.0 / (sd.lambda1 - 5.0)).epsilon(1e-14));

  // Q is the limit of u_{2k} / v_{2k}
  const auto logs = uv_from_orbit(simulate(kSample, State<double>{0.3, 4.0}, 120));
  CHECK(std::exp(logs[120].log_u - logs[120].log_v) == doctest::Approx(sd.Q).epsilon(1e-13));

  const auto ex = spectral_constants(kRational, State<Rational>{2, 3});
  CHECK(ex.C1 - ex.C2 == 2);
  CHECK(ex.C3 - ex.C4 == 3);
}

TEST_CASE("rank2_uv") {
  const auto uv = rank2_uv(kRational, State<Rational>{2, 3}, 0);
  CHECK(uv.u == 2);
  CHECK(uv.v == 3);
  const auto orbit = simulate(kRational, State<Rational>{2, 3}, 9);
  const auto want = uv_from_orbit(orbit);
  for (std::size_t n = 0; n <= 9; ++n) {
    const auto got = rank2_uv(kRational, State<Rational>{2, 3}, n);
    CHECK(got.u == want[n].u);
    CHECK(got.v == want[n].v);
  }
  const auto f = rank2_uv(kSample, State<double>{1, 1}, 2);
  CHECK(f.u.sign == 1);
  CHECK(std::exp(f.u.log_abs) == doctest::Approx(13.0));
  CHECK(std::exp(f.v.log_abs) == doctest::Approx(24.0));
}

TEST_CASE("closed form against iteration") {
  const auto want = oracle::iterate(sample_oracle(), {1, 1}, 40);
  const auto orbit = rank2_orbit(kSample, State<double>{1, 1}, 40);
  for (std::size_t n = 0; n <= 40; ++n) {
    const auto s = rank2_solution(kSample, State<double>{1, 1}, n);
    CHECK(oracle::rel(s.x, want[n].x) < 1e-9);
    CHECK(oracle::rel(s.y, want[n].y) < 1e-9);
    CHECK(oracle::rel(orbit[n].x, want[n].x) < 1e-9);
  }
  CHECK(rank2_solution(kSample, State<double>{1, 1}, 1).x == doctest::Approx(3.0));

  // rational eigenvalues: exact agreement
  const auto ex = simulate(kRational, State<Rational>{Rational(5, 4), Rational(1, 3)}, 12);
  const auto closed = rank2_orbit(kRational, State<Rational>{Rational(5, 4), Rational(1, 3)}, 12);
  for (std::size_t n = 0; n <= 12; ++n) {
    CHECK(closed[n].x == ex[n].x);
    CHECK(closed[n].y == ex[n].y);
  }

  const auto far = rank2_log_solution(kSample, State<double>{1, 1}, 4000);
  const auto logs = log_simulate(kSample, State<double>{1, 1}, 4000);
  CHECK(far.log_x == doctest::Approx(logs[4000].log_x).epsilon(1e-9));
  CHECK(far.log_y == doctest::Approx(logs[4000].log_y).epsilon(1e-9));
}

TEST_CASE("criterion and its sign against the long-run slope") {
  const auto w = criterion_delta(kSample);
  const auto [d, s] = oracle::delta(sample_oracle());
  CHECK(w.delta == doctest::Approx(double(d)).epsilon(1e-12));
  CHECK(w.scale == doctest::Approx(double(s)).epsilon(1e-12));
  CHECK(w.delta < 0);
  CHECK(classify_rank2(kSample).kind == Kind::VanishEvenBlowOdd);
  const auto logs = log_simulate(kSample, State<double>{1, 1}, 4000);
  CHECK(logs[4000].log_x < logs[3000].log_x);
  CHECK(logs[3999].log_x > logs[2999].log_x);

  const auto lr = limit_ratios(kSample);
  CHECK(lr.L1 == doctest::Approx(lr.L2).epsilon(1e-12));
  CHECK(lr.L1 == doctest::Approx(w.delta / w.scale).epsilon(1e-12));
}

TEST_CASE("delta = 0 instance: classification and limit cycle") {
  const auto op = delta_zero(99);
  const auto p = op.lib();
  CHECK(classify_rank2(p).kind == Kind::ConvergesToTwoPeriodic);

  const auto cyc = limit_cycle(p, State<double>{1, 1});
  CHECK(cyc.residual < 1e-9);
  CHECK(fixed_point_residual(p, cyc.x_even, cyc.x_odd, cyc.y_even, cyc.y_odd) < 1e-9);
  const auto sim = oracle::iterate(op, {1, 1}, 3000);
  CHECK(oracle::rel(sim[3000].x, cyc.x_even) < 1e-8);
  CHECK(oracle::rel(sim[2999].y, cyc.y_odd) < 1e-8);

  const auto other = limit_cycle(p, State<double>{3, 0.2});
  CHECK(std::fabs(other.x_even - cyc.x_even) > 1e-6);
  CHECK(classify_rank2(p).kind == Kind::ConvergesToTwoPeriodic);

  // off the root the cycle does not exist
  CHECK_THROWS_AS(limit_cycle(kSample, State<double>{1, 1}), BranchError);
}
