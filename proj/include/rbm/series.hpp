#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "rbm/model.hpp"
#include "rbm/montecarlo.hpp"
#include "rbm/rng.hpp"

// Renewal series for the law of sup_{[0,T]} X_t: conditioning on the number
// of resets n, the n-th term is lambda^n e^{-lambda T} times an integral of
// products of single-segment sup CDFs over the time simplex, estimated by
// Monte Carlo over uniform (Dirichlet) draws.

namespace rbm::series {

struct SeriesConfig {
  std::size_t n_max = 60;        ///< highest reset count kept
  std::size_t M = 5000;          ///< simplex draws per term
  std::uint64_t seed = 20240611;
  double T_max = 30.0;           ///< horizon of the mean-FPT integral
  double grid_step = 0.01;       ///< rectangle width of the mean-FPT integral
  std::size_t workers = 1;
  /// Terms whose Poisson weight is below this are skipped; their weight is
  /// added to truncation_bound.
  double skip_weight = 1e-15;
  /// Mixed into every term's stream id; sup_cdf_curve varies it per level
  /// unless shared randomness is requested.
  std::uint64_t stream_offset = 0;

  void validate() const;
};

struct SeriesResult {
  double value = 0.0;
  double truncation_bound = 0.0;  ///< Poisson mass of the omitted terms
  double mc_std_err = 0.0;
};

struct TermEstimate {
  double value = 0.0;
  double std_err = 0.0;
};

/// T * (S_1..S_n) / (S_1 + ... + S_{n+1}) for unit exponentials S_k:
/// a uniform point of {s_i > 0, sum s_i < T}.
std::vector<double> sample_dirichlet_simplex(std::size_t n, double T, RngStream& rng);

using SimplexIntegrand = std::function<double(std::span<const double>)>;

/// (T^n / n!) * mean of integrand over M uniform simplex draws, with the
/// matching standard error. The integrand must return values in [0, 1];
/// anything else raises ContractViolation.
TermEstimate simplex_term_mc(std::size_t n, double T, const SimplexIntegrand& integrand, std::size_t M,
                             RngStream& rng);

/// P(sup_{[0,T]} X_t <= u) for a fixed x0. Stationary x0 raises
/// UnsupportedInput (see stationary_sup_cdf_series).
SeriesResult sup_cdf_series(double u, double T, const ModelParams& params, const SeriesConfig& cfg);

/// The weighted terms of sup_cdf_series, index n = reset count. Term 0 is
/// exact (std_err 0); skipped terms are reported as zero.
std::vector<TermEstimate> sup_cdf_series_terms(double u, double T, const ModelParams& params,
                                               const SeriesConfig& cfg);

/// Series CDF at each level. With shared_randomness every level reuses the
/// same simplex draws, so the curve is nondecreasing draw by draw.
std::vector<SeriesResult> sup_cdf_curve(std::span<const double> levels, double T, const ModelParams& params,
                                        const SeriesConfig& cfg, bool shared_randomness);

/// Two-sided bounds on the exceedance probability P(sup_{[0,T]} X_t > u).
std::pair<double, double> sup_cdf_bounds(double u, double T, const ModelParams& params);

/// P(tau > T) for tau the first passage above u; identical to sup_cdf_series.
SeriesResult fpt_survival(double u, double T, const ModelParams& params, const SeriesConfig& cfg);

struct MeanFptResult {
  montecarlo::Estimate estimate;    ///< left-rectangle integral of the survival over [0, T_max)
  double series_truncation = 0.0;   ///< grid_step * sum of per-horizon truncation bounds
  double tail_survival = 0.0;       ///< estimated P(tau > T_max - grid_step); mass beyond T_max is not counted
};

/// E tau ~= grid_step * sum_j P(tau > j grid_step), j < T_max / grid_step.
MeanFptResult mean_fpt_series(double u, const ModelParams& params, const SeriesConfig& cfg);

/// mean_fpt_series for several reset rates. The simplex term means do not
/// depend on lambda, so one set of draws serves every rate; differences
/// between rates are then far less noisy than independent runs.
std::vector<MeanFptResult> mean_fpt_series_sweep(double u, const ModelParams& params,
                                                 std::span<const double> lambdas, const SeriesConfig& cfg);

/// (exp(u sqrt(2 lambda) / sigma) - 1) / lambda; zero drift, x0 = xR = 0.
double mean_fpt_exact(double u, double lambda, double sigma);

/// Same, but checks that the model is in the zero-drift, x0 = xR = 0 case.
double mean_fpt_exact(double u, const ModelParams& params);

/// Minimizer of mean_fpt_exact over lambda by golden-section search.
std::pair<double, double> optimal_lambda(double u, double sigma);

/// P(sup_{[0,T]} Y_t <= u) for the process started from its stationary law.
SeriesResult stationary_sup_cdf_series(double u, double T, const ModelParams& params, const SeriesConfig& cfg);

/// E F(u - X_inf, s) by quadrature against the stationary density.
double stationary_first_segment_cdf(double u, double s, const ModelParams& params);

}  // namespace rbm::series
