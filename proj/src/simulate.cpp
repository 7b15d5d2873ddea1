#include "rbm/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rbm/analytic.hpp"
#include "rbm/errors.hpp"
#include "rbm/numerics.hpp"

namespace rbm::simulate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double next_gap(double lambda, RngStream& rng) { return lambda > 0.0 ? rng.exponential() / lambda : kInf; }

// Walks the merged grid and reports every recorded point and reset to the
// visitor. Shared by sample_path and sample_grid_functionals so that both
// consume the stream identically.
template <class Visitor>
void walk_path(double T, double step, const ModelParams& p, RngStream& rng, Visitor&& visit) {
  p.validate_for_sampling();
  if (!(T > 0.0) || !std::isfinite(T)) throw ParameterError("sample_path: T must be positive");
  if (!(step > 0.0) || !(step <= T)) throw ParameterError("sample_path: require 0 < step <= T");

  double t = 0.0;
  double x = sample_initial(rng, p);
  const double drift = -p.c;
  visit.point(t, x);

  double next_epoch = next_gap(p.lambda, rng);
  const auto n_steps = static_cast<std::size_t>(std::ceil(T / step - 1e-9));
  for (std::size_t k = 1; k <= n_steps; ++k) {
    const double target = k == n_steps ? T : static_cast<double>(k) * step;
    while (next_epoch <= target) {
      const double dt = next_epoch - t;
      if (dt > 0.0) x += drift * dt + p.sigma * std::sqrt(dt) * rng.normal();
      visit.reset(next_epoch, x, p.xR);
      t = next_epoch;
      x = p.xR;
      next_epoch = t + next_gap(p.lambda, rng);
    }
    const double dt = target - t;
    if (dt > 0.0) {
      x += drift * dt + p.sigma * std::sqrt(dt) * rng.normal();
      t = target;
      visit.point(t, x);
    }
  }
}

struct TrajectoryRecorder {
  Trajectory& traj;
  void point(double t, double x) {
    traj.times.push_back(t);
    traj.values.push_back(x);
  }
  void reset(double t, double pre, double post) {
    traj.reset_epochs.push_back(t);
    traj.left_limits.push_back(pre);
    traj.times.push_back(t);
    traj.values.push_back(post);
  }
};

struct FunctionalAccumulator {
  double level;
  PathFunctionals out{-kInf, kInf, 0.0, std::nullopt};
  void see(double t, double x) {
    out.sup = std::max(out.sup, x);
    out.inf = std::min(out.inf, x);
    if (!out.fpt && x > level) out.fpt = t;
  }
  void point(double t, double x) {
    see(t, x);
    out.last = x;
  }
  void reset(double t, double pre, double post) {
    see(t, pre);
    see(t, post);
    out.last = post;
  }
};

}  // namespace

double sample_stationary_init(RngStream& rng, const ModelParams& params) {
  params.validate();
  const double s = rng.exponential() / params.lambda;
  return params.xR + std::sqrt(s) * params.sigma * rng.normal() - params.c * s;
}

double sample_initial(RngStream& rng, const ModelParams& params) {
  return params.x0.is_stationary() ? sample_stationary_init(rng, params) : params.x0.value();
}

Trajectory sample_path(double T, double step, const ModelParams& params, RngStream& rng) {
  Trajectory traj;
  const auto expected = static_cast<std::size_t>(T / step) + 2;
  traj.times.reserve(expected);
  traj.values.reserve(expected);
  walk_path(T, step, params, rng, TrajectoryRecorder{traj});
  return traj;
}

PathFunctionals path_functionals(const Trajectory& traj, double level) {
  if (traj.times.empty()) throw ParameterError("path_functionals: empty trajectory");
  FunctionalAccumulator acc{level};
  std::size_t r = 0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    // A recorded reset is the point at an epoch carrying the post-jump value;
    // its left limit is visited first.
    if (r < traj.reset_epochs.size() && traj.times[i] == traj.reset_epochs[r] && i > 0) {
      acc.reset(traj.times[i], traj.left_limits[r], traj.values[i]);
      ++r;
      continue;
    }
    acc.point(traj.times[i], traj.values[i]);
  }
  return acc.out;
}

PathFunctionals sample_grid_functionals(double T, double step, double level, const ModelParams& params,
                                        RngStream& rng) {
  FunctionalAccumulator acc{level};
  walk_path(T, step, params, rng, acc);
  return acc.out;
}

double sample_segment_sup(double duration, double start, const ModelParams& params, RngStream& rng) {
  if (!(duration > 0.0)) throw ParameterError("sample_segment_sup: duration must be positive");
  const double u = rng.uniform();
  const double scale = params.sigma * std::sqrt(duration);
  auto F = [&](double h) { return analytic::sup_cdf_drifted_bm(h, duration, params.c, params.sigma); };
  double hi = std::abs(params.c) * duration + 10.0 * scale;
  for (int i = 0; i < 60 && F(hi) < u; ++i) hi *= 2.0;
  const double h = numerics::invert_monotone(F, u, 0.0, hi, 1e-13 * std::max(scale, 1e-300) + 1e-300);
  return start + h;
}

double sample_sup(double T, const ModelParams& params, RngStream& rng) {
  params.validate_for_sampling();
  if (!(T > 0.0) || !std::isfinite(T)) throw ParameterError("sample_sup: T must be positive");
  double t = 0.0;
  double start = sample_initial(rng, params);
  double sup = -kInf;
  while (true) {
    const double gap = next_gap(params.lambda, rng);
    const double len = std::min(gap, T - t);
    sup = std::max(sup, sample_segment_sup(len, start, params, rng));
    t += gap;
    if (t >= T) break;
    start = params.xR;
  }
  return sup;
}

double sample_last_reset_age(double T, double lambda, RngStream& rng) {
  if (!(T > 0.0) || !(lambda > 0.0)) throw ParameterError("sample_last_reset_age: require T > 0, lambda > 0");
  // CDF on (0,T): (1 - e^{-lambda x}) / (1 - e^{-lambda T}).
  const double u = rng.uniform();
  const double x = -std::log1p(u * std::expm1(-lambda * T)) / lambda;
  return std::clamp(x, std::nextafter(0.0, 1.0), std::nextafter(T, 0.0));
}

std::vector<double> sample_at_times(std::span<const double> times, const ModelParams& params, RngStream& rng) {
  params.validate_for_sampling();
  std::vector<double> out;
  out.reserve(times.size());
  double t = 0.0;
  double x = sample_initial(rng, params);
  double next_epoch = next_gap(params.lambda, rng);
  for (const double target : times) {
    if (!(target >= t)) throw ParameterError("sample_at_times: times must be nondecreasing and >= 0");
    // Only the last reset before target matters; the path in between is erased.
    while (next_epoch <= target) {
      t = next_epoch;
      x = params.xR;
      next_epoch = t + next_gap(params.lambda, rng);
    }
    const double dt = target - t;
    if (dt > 0.0) x += -params.c * dt + params.sigma * std::sqrt(dt) * rng.normal();
    t = target;
    out.push_back(x);
  }
  return out;
}

bool sample_window_inf_event(double T, double Delta, double u, double v, double step, const ModelParams& params,
                             RngStream& rng) {
  params.validate_for_sampling();
  if (!(T > 0.0) || !(Delta > 0.0) || !(step > 0.0)) throw ParameterError("sample_window_inf_event: bad times");
  if (!(u > params.xR)) throw DomainError("sample_window_inf_event: requires u > xR");
  const double at_T = T;
  double x = sample_at_times(std::span<const double>(&at_T, 1), params, rng).front();
  if (!(x > v) || !(x > u)) return false;
  // Any reset inside the window lands at xR < u.
  if (next_gap(params.lambda, rng) <= Delta) return false;
  const double s2 = params.sigma * params.sigma;
  double elapsed = 0.0;
  while (elapsed < Delta) {
    const double h = std::min(step, Delta - elapsed);
    const double next = x - params.c * h + params.sigma * std::sqrt(h) * rng.normal();
    if (next <= u) return false;
    const double p_cross = std::exp(-2.0 * (x - u) * (next - u) / (s2 * h));
    if (rng.uniform() < p_cross) return false;
    x = next;
    elapsed += h;
  }
  return true;
}

}  // namespace rbm::simulate
