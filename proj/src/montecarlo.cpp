#include "rbm/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "rbm/errors.hpp"

namespace rbm::montecarlo {

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  workers = std::clamp<std::size_t>(workers, 1, count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

void check_counts(std::size_t n, std::size_t workers) {
  if (n < 2) throw ParameterError("Monte Carlo estimate needs n >= 2");
  if (workers < 1) throw ParameterError("workers must be >= 1");
}

std::size_t block_count(std::size_t n) { return (n + kBlockSize - 1) / kBlockSize; }

// Calls visit(rng, global_index) for every sample of block b.
template <class Visit>
void run_block(std::size_t b, std::size_t n, std::uint64_t seed, Visit&& visit) {
  RngStream rng(seed, b);
  const std::size_t begin = b * kBlockSize;
  const std::size_t end = std::min(n, begin + kBlockSize);
  for (std::size_t i = begin; i < end; ++i) {
    try {
      visit(rng, i);
    } catch (const SamplerError&) {
      throw;
    } catch (const std::exception& e) {
      throw SamplerError(e.what(), i);
    }
  }
}

std::vector<Estimate> level_counts(const RealSampler& sampler, std::span<const double> levels, std::size_t n,
                                   std::uint64_t seed, std::size_t workers, bool upper) {
  check_counts(n, workers);
  const std::size_t blocks = block_count(n);
  std::vector<std::vector<std::size_t>> counts(blocks, std::vector<std::size_t>(levels.size(), 0));
  parallel_for(blocks, workers, [&](std::size_t b) {
    auto& local = counts[b];
    run_block(b, n, seed, [&](RngStream& rng, std::size_t) {
      const double x = sampler(rng);
      for (std::size_t j = 0; j < levels.size(); ++j)
        if (upper ? (x > levels[j]) : (x <= levels[j])) ++local[j];
    });
  });
  std::vector<Estimate> out;
  out.reserve(levels.size());
  for (std::size_t j = 0; j < levels.size(); ++j) {
    std::size_t total = 0;
    for (const auto& c : counts) total += c[j];
    out.push_back(proportion(total, n));
  }
  return out;
}

}  // namespace

Estimate proportion(std::size_t successes, std::size_t n) {
  const double p = static_cast<double>(successes) / static_cast<double>(n);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return {p, kZ95 * se, n, se};
}

Estimate estimate_prob(const IndicatorSampler& sampler, std::size_t n, std::uint64_t seed, std::size_t workers) {
  check_counts(n, workers);
  const std::size_t blocks = block_count(n);
  std::vector<std::size_t> hits(blocks, 0);
  parallel_for(blocks, workers, [&](std::size_t b) {
    std::size_t local = 0;
    run_block(b, n, seed, [&](RngStream& rng, std::size_t) { local += sampler(rng) ? 1 : 0; });
    hits[b] = local;
  });
  std::size_t total = 0;
  for (auto h : hits) total += h;
  return proportion(total, n);
}

Estimate estimate_mean(const RealSampler& sampler, std::size_t n, std::uint64_t seed, std::size_t workers) {
  check_counts(n, workers);
  struct Acc {
    double count = 0.0, mean = 0.0, m2 = 0.0;
  };
  const std::size_t blocks = block_count(n);
  std::vector<Acc> acc(blocks);
  parallel_for(blocks, workers, [&](std::size_t b) {
    Acc a;
    run_block(b, n, seed, [&](RngStream& rng, std::size_t) {
      const double x = sampler(rng);
      a.count += 1.0;
      const double d = x - a.mean;
      a.mean += d / a.count;
      a.m2 += d * (x - a.mean);
    });
    acc[b] = a;
  });
  // Chan et al. pairwise merge, always in block order.
  Acc total;
  for (const auto& a : acc) {
    if (a.count == 0.0) continue;
    const double count = total.count + a.count;
    const double d = a.mean - total.mean;
    total.mean += d * a.count / count;
    total.m2 += a.m2 + d * d * total.count * a.count / count;
    total.count = count;
  }
  const double var = total.m2 / (total.count - 1.0);
  const double se = std::sqrt(std::max(var, 0.0) / total.count);
  return {total.mean, kZ95 * se, n, se};
}

std::vector<Estimate> estimate_exceedances(const RealSampler& sampler, std::span<const double> levels,
                                           std::size_t n, std::uint64_t seed, std::size_t workers) {
  return level_counts(sampler, levels, n, seed, workers, true);
}

std::vector<Estimate> estimate_cdf(const RealSampler& sampler, std::span<const double> levels, std::size_t n,
                                   std::uint64_t seed, std::size_t workers) {
  return level_counts(sampler, levels, n, seed, workers, false);
}

}  // namespace rbm::montecarlo
