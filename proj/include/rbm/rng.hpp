#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace rbm {

/// Reproducible random stream keyed by (seed, stream_id). Streams with
/// different ids are seeded through independent SplitMix64 chains, so
/// sampling workers never share state.
///
/// The engine is xoshiro256++; the normal and exponential variates are
/// computed here rather than by <random> distributions so that output is
/// bit-identical across standard library implementations.
class RngStream {
public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept;
  /// Standard normal (Marsaglia polar method, second variate cached).
  double normal() noexcept;
  /// Unit-mean exponential.
  double exponential() noexcept;

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> s_{};
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

/// SplitMix64 finalizer; also used to derive child stream ids.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stream id for the pair (a, b), e.g. (term index, grid index).
std::uint64_t derive_stream_id(std::uint64_t a, std::uint64_t b) noexcept;

}  // namespace rbm
