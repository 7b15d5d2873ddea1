#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rbm/model.hpp"
#include "rbm/rng.hpp"

namespace rbm::simulate {

/// A sampled path on the merged grid (regular grid, reset epochs, T).
/// At a reset epoch the recorded value is the post-jump level xR; the
/// pre-jump value is kept in left_limits[i] for reset_epochs[i].
struct Trajectory {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> reset_epochs;
  std::vector<double> left_limits;
};

struct PathFunctionals {
  double sup = 0.0;
  double inf = 0.0;
  double last = 0.0;
  std::optional<double> fpt;  ///< first recorded time with value > level
};

/// One exact draw of X_inf = xR + sqrt(S) sigma Z - c S, S ~ Exp(lambda).
double sample_stationary_init(RngStream& rng, const ModelParams& params);

/// x0 for fixed starts, a stationary draw otherwise.
double sample_initial(RngStream& rng, const ModelParams& params);

/// Path on [0, T] with exact Poisson epochs and Gaussian increments on the
/// merged grid. lambda == 0 is allowed (no resets).
Trajectory sample_path(double T, double step, const ModelParams& params, RngStream& rng);

/// sup/inf/last over the recorded grid, including pre-jump left limits.
PathFunctionals path_functionals(const Trajectory& traj, double level);

/// Same draw as path_functionals(sample_path(...), level) for the same
/// stream state, without materializing the path.
PathFunctionals sample_grid_functionals(double T, double step, double level, const ModelParams& params,
                                        RngStream& rng);

/// Exact draw of start + sup_{[0,duration]} (W_t - c t) by inverting
/// F(., duration) at a uniform variate.
double sample_segment_sup(double duration, double start, const ModelParams& params, RngStream& rng);

/// Exact draw of sup_{[0,T]} X_t: Poisson epochs, then the maximum of the
/// independent per-segment suprema (first from x0, later ones from xR).
double sample_sup(double T, const ModelParams& params, RngStream& rng);

/// Age of the last reset before T given at least one reset: truncated
/// exponential on (0, T), drawn by inversion.
double sample_last_reset_age(double T, double lambda, RngStream& rng);

/// Exact values X_{t_1}, ..., X_{t_k} at nondecreasing times t_i >= 0.
std::vector<double> sample_at_times(std::span<const double> times, const ModelParams& params, RngStream& rng);

/// Indicator of {inf_{[T, T+Delta]} X_t > u, X_T > v} for u > xR. X_T is exact;
/// the window is walked with the given step and a Brownian-bridge crossing
/// test between grid points.
bool sample_window_inf_event(double T, double Delta, double u, double v, double step, const ModelParams& params,
                             RngStream& rng);

}  // namespace rbm::simulate
