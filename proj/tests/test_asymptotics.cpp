#include <doctest.h>

#include <cmath>

#include "rbm/analytic.hpp"
#include "rbm/asymptotics.hpp"
#include "rbm/errors.hpp"
#include "rbm/normal.hpp"

using namespace rbm;
using namespace rbm::asymptotics;
using rbm::analytic::norm_cdf;
using rbm::analytic::norm_sf;

namespace {

ModelParams model(double lambda, double c, double x0, double xR) {
  ModelParams p;
  p.lambda = lambda;
  p.c = c;
  p.x0 = InitialCondition::fixed(x0);
  p.xR = xR;
  return p;
}

}  // namespace

TEST_CASE("supremum tail, reset level at or below the start") {
  const auto p = model(1.0, 0.0, 0.0, 0.0);
  const auto a = sup_tail_asym(5.0, 1.0, p);
  CHECK(a.regime == Regime::SupFromBelow);
  CHECK(regime_tag(a.regime) == "T3-i");
  CHECK(a.value == doctest::Approx(2.0 * std::exp(-1.0) * norm_sf(5.0)).epsilon(1e-14));

  auto q = p;
  q.c = 0.5;
  double prev = 0.0;
  for (double u : {6.0, 8.0, 10.0}) {
    const double lower = std::exp(-1.0) * 2.0 * norm_sf(u + 0.5);
    const double ratio = lower / sup_tail_asym(u, 1.0, q).value;
    CHECK(ratio == doctest::Approx(1.0).epsilon(0.02));
    prev = ratio;
  }
  (void)prev;
}

TEST_CASE("supremum tail, reset level above the start") {
  const auto p = model(2.0, 0.0, 0.0, 1.0);
  const auto a = sup_tail_asym(8.0, 1.0, p);
  CHECK(regime_tag(a.regime) == "T3-ii");
  CHECK(a.value == doctest::Approx(4.0 * 2.0 * std::exp(-2.0) / 64.0 * norm_sf(7.0)).epsilon(1e-14));
  const double oracle = sup_tail_single_reset_quadrature(8.0, 1.0, p);
  CHECK(oracle / a.value >= 0.9);
  CHECK(oracle / a.value <= 1.1);
  double prev = 10.0;
  for (double u : {16.0, 24.0, 32.0}) {
    const double gap = std::abs(sup_tail_single_reset_quadrature(u, 1.0, p) / sup_tail_asym(u, 1.0, p).value - 1.0);
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("supremum tail regime guards") {
  auto p = model(1.0, 0.0, 0.0, 0.0);
  p.sigma = 2.0;
  CHECK_THROWS_AS(sup_tail_asym(5.0, 1.0, p), UnsupportedRegime);
  p = model(1.0, 0.0, 0.1, 0.0);
  CHECK_THROWS_AS(sup_tail_asym(5.0, 1.0, p), UnsupportedRegime);
}

TEST_CASE("window constants") {
  CHECK(K_const(0.0, 1.0) == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-14));
  for (double c = -3.0; c <= 3.0; c += 0.25)
    for (double d = 0.1; d <= 5.0; d += 0.35) CHECK(K_const(c, d) > 0.0);
  CHECK(L_func(-3.0) == 1.0);
  CHECK(L_func(0.0) == 1.0);
  CHECK(L_func(1.0) == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-14));
  CHECK(L_func(1e-9) == doctest::Approx(1.0).epsilon(1e-12));
  double prev = 1.0;
  for (double y = 0.1; y < 20.0; y += 0.1) {
    const double l = L_func(y);
    CHECK(l < prev);
    CHECK(l > 0.0);
    prev = l;
  }
}

TEST_CASE("window asymptotics") {
  const auto below = model(1.0, 0.0, 0.0, 0.5);
  const auto above = model(1.0, 0.0, 0.5, 0.5);
  CHECK(regime_tag(inf_window_asym(7.0, 0.0, 1.0, 0.5, below).regime) == "T4-i");
  CHECK(regime_tag(inf_window_asym(7.0, 0.0, 1.0, 0.5, above).regime) == "T4-ii");
  const double base = inf_window_asym(7.0, 0.0, 1.0, 0.5, above).value;
  CHECK(inf_window_asym(7.0, 0.7, 1.0, 0.5, above).value == doctest::Approx(base * L_func(0.7)).epsilon(1e-13));
  CHECK(inf_window_level(7.0, 0.7, 1.0, above) == doctest::Approx(7.1));

  // Starting at the reset level: the exact value approaches the asymptotic
  // from above once u is large.
  double prev = 10.0;
  for (double u : {9.0, 12.0, 16.0}) {
    const double exact = analytic::inf_window_exact(1.0, 0.5, u, u, above);
    const double gap = std::abs(exact / inf_window_asym(u, 0.0, 1.0, 0.5, above).value - 1.0);
    CHECK(gap < prev);
    prev = gap;
  }
  auto p = above;
  p.sigma = 1.5;
  CHECK_THROWS_AS(inf_window_asym(7.0, 0.0, 1.0, 0.5, p), UnsupportedRegime);
}

TEST_CASE("stationary supremum tail reproduces the reference values") {
  const auto p2 = model(2.0, 0.0, 0.0, 1.0);
  const auto p3 = model(3.0, 0.0, 0.0, 1.0);
  const auto a = stationary_sup_tail_asym(2.5, 1.0, p2);
  CHECK(regime_tag(a.regime) == "T6");
  CHECK(a.value == doctest::Approx(0.13677).epsilon(1e-4));
  CHECK(stationary_sup_tail_asym(4.0, 1.0, p2).value == doctest::Approx(0.006809419).epsilon(1e-6));
  CHECK(stationary_sup_tail_asym(2.0, 1.0, p3).value == doctest::Approx(0.3237).epsilon(1e-3));
  auto q = p2;
  q.c = 0.1;
  CHECK_THROWS_AS(stationary_sup_tail_asym(2.5, 1.0, q), UnsupportedRegime);
}

TEST_CASE("stationary joint tail cases") {
  const auto p = model(2.0, 0.0, 0.0, 1.0);
  const auto neg = stationary_joint_asym(3.0, -0.5, 1.0, p);
  CHECK(regime_tag(neg.regime) == "T7-zneg");
  CHECK(neg.value == stationary_sup_tail_asym(3.0, 1.0, p).value);
  const auto mid = stationary_joint_asym(3.0, 0.5, 1.0, p);
  CHECK(regime_tag(mid.regime) == "T7-zmid");
  CHECK(mid.value == doctest::Approx(std::exp(2.0) * norm_cdf(2.0) * std::exp(-6.0)).epsilon(1e-13));
  CHECK(neg.value >= mid.value);
  const auto large = stationary_joint_asym(2.0, 1.5, 1.0, p);
  CHECK(regime_tag(large.regime) == "T7-zlarge-exact");
  CHECK(large.value == doctest::Approx(0.5 * std::exp(-4.0)).epsilon(1e-13));
  CHECK(large.value == doctest::Approx(analytic::stationary_sf(3.0, p)).epsilon(1e-13));
  CHECK_THROWS_AS(stationary_joint_asym(3.0, 0.0, 1.0, p), UncoveredCase);
  const auto [lo, hi] = stationary_joint_zero_bracket(3.0, 1.0, p);
  CHECK(lo <= hi);
  CHECK(lo > 0.0);
}
