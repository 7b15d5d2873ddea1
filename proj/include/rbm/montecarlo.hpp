#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rbm/rng.hpp"

namespace rbm::montecarlo {

/// Point estimate with a normal-approximation 95% interval.
struct Estimate {
  double value = 0.0;
  double half_width_95 = 0.0;  ///< always 1.96 * std_err
  std::size_t n = 0;
  double std_err = 0.0;
};

inline constexpr double kZ95 = 1.96;

/// Samples are split into fixed blocks of this size; block b draws from
/// RngStream(seed, b). Workers only decide who runs which block, so results
/// do not depend on the worker count.
inline constexpr std::size_t kBlockSize = 4096;

using IndicatorSampler = std::function<bool(RngStream&)>;
using RealSampler = std::function<double(RngStream&)>;

Estimate estimate_prob(const IndicatorSampler& sampler, std::size_t n, std::uint64_t seed, std::size_t workers = 1);

/// Mean with Welford accumulation per block, merged in block order.
Estimate estimate_mean(const RealSampler& sampler, std::size_t n, std::uint64_t seed, std::size_t workers = 1);

/// P(sample > level_j) for every level from one set of n draws.
std::vector<Estimate> estimate_exceedances(const RealSampler& sampler, std::span<const double> levels,
                                           std::size_t n, std::uint64_t seed, std::size_t workers = 1);

/// P(sample <= level_j), same sharing as estimate_exceedances.
std::vector<Estimate> estimate_cdf(const RealSampler& sampler, std::span<const double> levels, std::size_t n,
                                   std::uint64_t seed, std::size_t workers = 1);

/// Estimate for a proportion of successes out of n.
Estimate proportion(std::size_t successes, std::size_t n);

/// Runs body(i) for i in [0, count) on up to `workers` threads (dynamic
/// assignment). Exceptions are rethrown on the calling thread.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body);

}  // namespace rbm::montecarlo
