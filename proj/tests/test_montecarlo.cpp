#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rbm/errors.hpp"
#include "rbm/montecarlo.hpp"

using namespace rbm;
using namespace rbm::montecarlo;

TEST_CASE("estimates do not depend on the worker count") {
  auto sampler = [](RngStream& r) { return r.normal() * 2.0 + r.uniform(); };
  const auto one = estimate_mean(sampler, 50000, 3, 1);
  for (std::size_t w : {2, 3, 8}) {
    const auto many = estimate_mean(sampler, 50000, 3, w);
    CHECK(many.value == one.value);
    CHECK(many.std_err == one.std_err);
  }
  const std::vector<double> levels = {-1.0, 0.0, 2.0};
  const auto e1 = estimate_exceedances(sampler, levels, 30000, 4, 1);
  const auto e8 = estimate_exceedances(sampler, levels, 30000, 4, 8);
  for (std::size_t i = 0; i < levels.size(); ++i) CHECK(e1[i].value == e8[i].value);
}

TEST_CASE("mean and proportion estimates") {
  const auto m = estimate_mean([](RngStream& r) { return r.uniform(); }, 100000, 5);
  CHECK(std::abs(m.value - 0.5) < 4.5 * m.std_err);
  CHECK(m.std_err == doctest::Approx(std::sqrt(1.0 / 12.0 / 100000)).epsilon(0.02));
  CHECK(m.half_width_95 == doctest::Approx(1.96 * m.std_err));
  const auto p = proportion(30, 100);
  CHECK(p.value == 0.3);
  CHECK(p.std_err == doctest::Approx(std::sqrt(0.21 / 100)));
}

TEST_CASE("95% intervals cover") {
  int covered = 0;
  for (std::uint64_t k = 0; k < 200; ++k) {
    const auto e = estimate_prob([](RngStream& r) { return r.uniform() < 0.3; }, 2000, derive_stream_id(77, k));
    covered += std::abs(e.value - 0.3) <= e.half_width_95;
  }
  CHECK(covered >= 180);
}

TEST_CASE("sampler failures carry the sample index") {
  auto bad = [](RngStream& r) -> double {
    if (r.uniform() < 1e-3) throw std::runtime_error("boom");
    return 0.0;
  };
  try {
    estimate_mean(bad, 100000, 1, 4);
    FAIL("expected a SamplerError");
  } catch (const SamplerError& e) {
    CHECK(e.index() < 100000);
  }
  CHECK_THROWS_AS(estimate_mean([](RngStream&) { return 0.0; }, 1, 1), ParameterError);
}
