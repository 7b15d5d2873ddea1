#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rbm/analytic.hpp"
#include "rbm/errors.hpp"
#include "rbm/montecarlo.hpp"
#include "rbm/simulate.hpp"

using namespace rbm;
using namespace rbm::simulate;

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

TEST_CASE("trajectory structure") {
  const auto p = model(2.0, 1.0, 0.0, 1.0);
  RngStream r(1, 0);
  const auto tr = sample_path(3.0, 0.01, p, r);
  CHECK(tr.times.front() == 0.0);
  CHECK(tr.values.front() == 0.0);
  CHECK(tr.times.back() == doctest::Approx(3.0));
  CHECK(std::is_sorted(tr.times.begin(), tr.times.end()));
  CHECK(tr.reset_epochs.size() == tr.left_limits.size());
  for (double e : tr.reset_epochs) {
    auto it = std::find(tr.times.begin(), tr.times.end(), e);
    REQUIRE(it != tr.times.end());
    CHECK(tr.values[static_cast<std::size_t>(it - tr.times.begin())] == 1.0);
  }
  RngStream r2(1, 0);
  const auto again = sample_path(3.0, 0.01, p, r2);
  CHECK(again.values == tr.values);
}

TEST_CASE("no resets without a reset rate") {
  const auto p = model(0.0, 0.5, 0.2, 1.0);
  RngStream r(3, 0);
  const auto tr = sample_path(2.0, 0.05, p, r);
  CHECK(tr.reset_epochs.empty());
  CHECK(tr.times.size() == 41);
}

TEST_CASE("grid functionals equal the functionals of the recorded path") {
  const auto p = model(2.0, 1.0, 0.0, 1.0);
  for (std::uint64_t s = 0; s < 20; ++s) {
    RngStream a(9, s), b(9, s);
    const auto f1 = path_functionals(sample_path(2.0, 0.01, p, a), 1.5);
    const auto f2 = sample_grid_functionals(2.0, 0.01, 1.5, p, b);
    CHECK(f1.sup == f2.sup);
    CHECK(f1.inf == f2.inf);
    CHECK(f1.last == f2.last);
    CHECK(f1.fpt == f2.fpt);
  }
}

TEST_CASE("segment supremum sampler follows its distribution") {
  const auto p = model(1.0, 0.7, 0.0, 0.0);
  const std::vector<double> levels = {0.1, 0.4, 0.8, 1.5};
  const auto mc = montecarlo::estimate_cdf([&](RngStream& r) { return sample_segment_sup(1.3, 0.0, p, r); }, levels,
                                           100000, 5);
  for (std::size_t i = 0; i < levels.size(); ++i)
    CHECK(std::abs(mc[i].value - analytic::sup_cdf_drifted_bm(levels[i], 1.3, 0.7, 1.0)) <= 4.5 * mc[i].std_err);
}

TEST_CASE("exact supremum dominates the grid supremum in distribution") {
  const auto p = model(1.0, 0.5, 0.0, 0.5);
  const std::vector<double> levels = {1.0, 1.5, 2.0};
  const auto exact = montecarlo::estimate_exceedances([&](RngStream& r) { return sample_sup(1.0, p, r); }, levels,
                                                      100000, 6);
  const auto grid = montecarlo::estimate_exceedances(
      [&](RngStream& r) { return sample_grid_functionals(1.0, 0.05, 0.0, p, r).sup; }, levels, 100000, 7);
  for (std::size_t i = 0; i < levels.size(); ++i) CHECK(grid[i].value < exact[i].value);
}

TEST_CASE("last reset age is a truncated exponential") {
  RngStream r(11, 0);
  const double T = 2.0, l = 1.5;
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = sample_last_reset_age(T, l, r);
    CHECK_FALSE((x <= 0.0 || x >= T));
    sum += x;
  }
  const double mean = 1.0 / l - T * std::exp(-l * T) / (1.0 - std::exp(-l * T));
  CHECK(sum / n == doctest::Approx(mean).epsilon(0.01));
}

TEST_CASE("stationary initial law moments") {
  auto p = model(2.0, 1.0, 0.0, 1.0);
  const auto m = montecarlo::estimate_mean([&](RngStream& r) { return sample_stationary_init(r, p); }, 200000, 8);
  CHECK(std::abs(m.value - analytic::stationary_mean(p)) < 4.5 * m.std_err);
}

TEST_CASE("exact marginals at several times") {
  const auto p = model(1.0, 0.5, 0.0, 0.5);
  const std::vector<double> times = {0.0, 0.5, 2.0};
  RngStream r(12, 0);
  const auto x = sample_at_times(times, p, r);
  CHECK(x.size() == 3);
  CHECK(x[0] == 0.0);
  const std::vector<double> bad = {1.0, 0.5};
  CHECK_THROWS_AS(sample_at_times(bad, p, r), ParameterError);
}

TEST_CASE("argument checks") {
  const auto p = model(1.0, 0.0, 0.0, 0.0);
  RngStream r(1, 1);
  CHECK_THROWS_AS(sample_path(0.0, 0.1, p, r), ParameterError);
  CHECK_THROWS_AS(sample_path(1.0, 2.0, p, r), ParameterError);
  CHECK_THROWS_AS(sample_window_inf_event(1.0, 0.5, -1.0, 0.0, 0.01, p, r), DomainError);
  auto bad = p;
  bad.sigma = -1.0;
  CHECK_THROWS_AS(sample_sup(1.0, bad, r), ParameterError);
}
