#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rbm/analytic.hpp"
#include "rbm/errors.hpp"
#include "rbm/montecarlo.hpp"
#include "rbm/numerics.hpp"
#include "rbm/simulate.hpp"

using namespace rbm;
using namespace rbm::analytic;

namespace {

ModelParams model(double sigma, double lambda, double c, double x0, double xR) {
  ModelParams p;
  p.sigma = sigma;
  p.lambda = lambda;
  p.c = c;
  p.x0 = InitialCondition::fixed(x0);
  p.xR = xR;
  return p;
}

// |estimate - value| within k standard errors (plus a floor for p near 0 or 1).
void check_mc(const montecarlo::Estimate& e, double value, double k = 4.5) {
  CHECK(std::abs(e.value - value) <= k * std::max(e.std_err, 1.0 / static_cast<double>(e.n)));
}

}  // namespace

TEST_CASE("supremum law of drifted BM agrees with its first-passage density") {
  for (double c : {-1.0, 0.0, 0.7}) {
    for (double sigma : {0.5, 1.0, 2.0}) {
      for (double u : {0.3, 1.0, 2.5}) {
        const double T = 1.7;
        auto density = [&](double s) {
          return u / (sigma * std::pow(s, 1.5)) * norm_pdf((u + c * s) / (sigma * std::sqrt(s)));
        };
        const double passed = numerics::adaptive_quad(density, 0.0, T, 1e-13).value;
        CHECK(sup_sf_drifted_bm(u, T, c, sigma) == doctest::Approx(passed).epsilon(1e-9));
        CHECK(sup_cdf_drifted_bm(u, T, c, sigma) + sup_sf_drifted_bm(u, T, c, sigma) == doctest::Approx(1.0));
      }
    }
  }
  CHECK(sup_cdf_drifted_bm(-0.1, 1.0, 0.0, 1.0) == 0.0);
  CHECK(sup_cdf_drifted_bm(0.0, 1.0, 0.0, 1.0) == 0.0);
  // Zero drift: reflection principle.
  CHECK(sup_cdf_drifted_bm(1.3, 2.0, 0.0, 1.0) == doctest::Approx(2.0 * norm_cdf(1.3 / std::sqrt(2.0)) - 1.0));
  CHECK_THROWS_AS(sup_cdf_drifted_bm(1.0, 0.0, 0.0, 1.0), ParameterError);
}

TEST_CASE("supremum tail stays positive and accurate for large levels") {
  // Positive drift c pulls the path down; the reflected term would underflow
  // through exp(-2uc) * Psi without the combined form.
  const double v = sup_sf_drifted_bm(20.0, 1.0, 3.0, 1.0);
  CHECK(v > 0.0);
  CHECK(v == doctest::Approx(norm_sf(23.0) + norm_pdf(23.0) * mills_ratio(17.0)).epsilon(1e-12));
}

TEST_CASE("bivariate Gaussian orthant oracle") {
  // P(W_s <= 0, W_t <= 0) = 1/4 + asin(sqrt(s/t)) / (2 pi) for zero-mean BM.
  for (double c : {0.0, 0.8, -1.2}) {
    for (auto [s, t] : {std::pair{1.0, 2.0}, std::pair{0.3, 2.1}, std::pair{1.0, 1.01}}) {
      const double oracle = 0.25 + std::asin(std::sqrt(s / t)) / (2.0 * std::numbers::pi);
      CHECK(drifted_bm_joint_cdf(s, t, -c * s, -c * t, c, 1.0) == doctest::Approx(oracle).epsilon(1e-9));
    }
  }
  CHECK(drifted_bm_joint_cdf(0.0, 1.0, 0.5, 0.2, 0.0, 1.0) == doctest::Approx(norm_cdf(0.2)));
  CHECK(drifted_bm_joint_cdf(0.0, 1.0, -0.5, 0.2, 0.0, 1.0) == 0.0);
}

TEST_CASE("one-dimensional law against exact sampling") {
  const auto p = model(1.2, 1.5, 0.6, 0.4, -0.3);
  const double t = 1.3;
  const std::vector<double> levels = {-1.5, -0.5, 0.0, 0.4, 1.5};
  const auto mc = montecarlo::estimate_cdf(
      [&](RngStream& r) { return simulate::sample_at_times(std::span<const double>(&t, 1), p, r).front(); }, levels,
      200000, 11);
  for (std::size_t i = 0; i < levels.size(); ++i) check_mc(mc[i], reset_cdf_1d(levels[i], t, p));
}

TEST_CASE("one-dimensional law limits") {
  auto p = model(1.0, 1e-9, 0.5, 0.0, 3.0);
  CHECK(reset_cdf_1d(0.2, 2.0, p) == doctest::Approx(drifted_bm_cdf(0.2, 2.0, 0.5, 1.0)).epsilon(1e-8));
  p.lambda = 2.0;
  for (double u : {-2.0, 2.5, 3.0, 4.0}) CHECK(reset_cdf_1d(u, 20.0, p) == doctest::Approx(stationary_cdf(u, p)).epsilon(1e-9));
  auto q = p;
  q.x0 = InitialCondition::stationary();
  CHECK_THROWS_AS(reset_cdf_1d(0.0, 1.0, q), UnsupportedInput);
}

TEST_CASE("stationary law: closed-form values") {
  auto p = model(1.0, 2.0, 0.0, 0.0, 1.0);
  CHECK(stationary_sf(1.0, p) == doctest::Approx(0.5));
  for (double u : {1.0, 1.5, 3.0}) CHECK(stationary_sf(u, p) == doctest::Approx(0.5 * std::exp(-2.0 * (u - 1.0))).epsilon(1e-14));
  CHECK(alpha_param(p).alpha == doctest::Approx(2.0));
  for (double x : {-3.0, 0.2, 1.0, 4.0}) CHECK(stationary_cdf(x, p) + stationary_sf(x, p) == doctest::Approx(1.0));
}

TEST_CASE("stationary law against its sampling representation") {
  for (double c : {1.0, -0.7}) {
    const auto p = model(1.3, 2.0, c, 0.0, 1.0);
    const std::vector<double> levels = {-1.0, 0.5, 1.0, 1.5, 2.5};
    const auto mc = montecarlo::estimate_cdf([&](RngStream& r) { return simulate::sample_stationary_init(r, p); },
                                             levels, 400000, 21);
    for (std::size_t i = 0; i < levels.size(); ++i) check_mc(mc[i], stationary_cdf(levels[i], p));
    const auto a = alpha_param(p);
    CHECK(stationary_sf(2.7, p) == doctest::Approx(a.prefactor * std::exp(-a.alpha * 1.7)).epsilon(1e-14));
  }
}

TEST_CASE("stationary moments by quadrature") {
  const auto p = model(0.8, 1.7, -0.9, 0.0, 0.4);
  auto m = [&](auto g) {
    auto f = [&](double x) { return g(x) * stationary_pdf(x, p); };
    return numerics::adaptive_quad(f, -60.0, 0.4, 1e-13).value + numerics::adaptive_quad(f, 0.4, 60.0, 1e-13).value;
  };
  CHECK(m([](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(m([](double x) { return x; }) == doctest::Approx(stationary_mean(p)).epsilon(1e-9));
  const double mu = stationary_mean(p);
  CHECK(m([&](double x) { return (x - mu) * (x - mu); }) == doctest::Approx(stationary_variance(p)).epsilon(1e-9));
}

TEST_CASE("joint law against exact sampling") {
  const auto p = model(1.0, 1.0, 0.5, 0.0, 0.5);
  const std::vector<double> times = {0.6, 1.4};
  const std::vector<std::pair<double, double>> pts = {{0.0, 0.0}, {0.5, -0.2}, {-0.3, 0.8}, {1.0, 1.0}};
  for (auto [u, w] : pts) {
    const auto e = montecarlo::estimate_prob(
        [&](RngStream& r) {
          const auto x = simulate::sample_at_times(times, p, r);
          return x[0] <= u && x[1] <= w;
        },
        200000, 31);
    check_mc(e, joint_cdf(0.6, 1.4, u, w, p));
  }
}

TEST_CASE("joint density is the mixed derivative of the joint CDF") {
  const auto p = model(1.0, 1.2, 0.3, 0.0, 0.5);
  const double h = 1e-3;
  for (auto [u, w] : {std::pair{0.2, 0.4}, std::pair{-0.4, 0.9}}) {
    const double fd = (joint_cdf(0.5, 1.2, u + h, w + h, p) - joint_cdf(0.5, 1.2, u + h, w - h, p) -
                       joint_cdf(0.5, 1.2, u - h, w + h, p) + joint_cdf(0.5, 1.2, u - h, w - h, p)) /
                      (4 * h * h);
    CHECK(joint_density(0.5, 1.2, u, w, p) == doctest::Approx(fd).epsilon(2e-4));
  }
  CHECK_THROWS_AS(joint_density(0.0, 1.0, 0.0, 0.0, p), ParameterError);
}

TEST_CASE("stationary joint law against sampling from the stationary start") {
  auto p = model(1.0, 2.0, 0.0, 0.0, 1.0);
  p.x0 = InitialCondition::stationary();
  const std::vector<double> times = {0.0, 0.5};
  const auto e = montecarlo::estimate_prob(
      [&](RngStream& r) {
        const auto x = simulate::sample_at_times(times, p, r);
        return x[0] <= 1.0 && x[1] <= 1.0;
      },
      400000, 41);
  check_mc(e, stationary_joint_cdf(0.5, 1.0, 1.0, p));
  CHECK(stationary_joint_cdf(0.5, 60.0, 60.0, p) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(stationary_joint_cdf(0.5, 0.3, 60.0, p) == doctest::Approx(stationary_cdf(0.3, p)).epsilon(1e-8));
}

TEST_CASE("window minimum law: limits and monotonicity") {
  // A very low floor leaves only the constraint on the window's starting value.
  CHECK(win_min_joint(2.0, 0.5, -60.0, 0.3, 0.4, 1.0) == doctest::Approx(norm_sf(0.3 / std::sqrt(1.5))).epsilon(1e-8));
  double prev = 1.0;
  for (double u : {-2.0, -1.0, 0.0, 0.5, 1.0}) {
    const double v = win_min_joint(2.0, 0.5, u, -0.5, 0.4, 1.0);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
}

TEST_CASE("window infimum decomposition against bridge-corrected simulation") {
  const auto p = model(1.0, 1.0, 0.0, 0.0, 0.5);
  const double exact = inf_window_exact(1.0, 0.5, 1.2, 1.2, p);
  const auto e = montecarlo::estimate_prob(
      [&](RngStream& r) { return simulate::sample_window_inf_event(1.0, 0.5, 1.2, 1.2, 1e-3, p, r); }, 200000, 51);
  check_mc(e, exact);
  CHECK_THROWS_AS(inf_window_exact(1.0, 0.5, 0.5, 1.0, p), DomainError);
}
