#pragma once

#include <cstddef>
#include <functional>
#include <utility>

namespace rbm::numerics {

using RealFn = std::function<double(double)>;

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Stopping rule for adaptive_quad: refine until the summed panel error is
/// at most max(abs_tol, rel_tol * |value|), or max_panels is reached.
struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  std::size_t max_panels = 2000;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on [a, b]. The panel with
/// the largest error estimate is bisected until the tolerance is met.
/// Endpoints are never evaluated, so integrable endpoint singularities and
/// limits defined only on the open interval are fine.
/// Throws EvaluationError if f returns a non-finite value.
QuadResult adaptive_quad(const RealFn& f, double a, double b, double tol);
QuadResult adaptive_quad(const RealFn& f, double a, double b, const QuadOptions& opts);

/// int_0^inf rate * exp(-rate s) f(s) ds via s = -log(1-q)/rate on q in (0,1).
QuadResult quad_exp_weight(const RealFn& f, double rate, const QuadOptions& opts);

/// int_0^upper rate * exp(-rate s) f(s) ds, same substitution restricted to
/// q in (0, 1 - exp(-rate*upper)).
QuadResult quad_exp_weight(const RealFn& f, double rate, double upper, const QuadOptions& opts);

/// Bisection for x in [lo, hi] with f(x) = target, f nondecreasing.
/// Returns the bracket midpoint once hi - lo <= tol.
/// Throws BracketError if target is outside [f(lo), f(hi)].
double invert_monotone(const RealFn& f, double target, double lo, double hi, double tol);

/// P(Poisson(mu) = n).
double poisson_pmf(std::size_t n, double mu);

/// P(Poisson(mu) > n), summed on whichever side of the mode avoids cancellation.
double poisson_tail(std::size_t n, double mu);

/// Golden-section search on [lo, hi]. f is assumed unimodal; with several
/// local minima one of them is returned. Returns (argmin, f(argmin)).
std::pair<double, double> golden_minimize(const RealFn& f, double lo, double hi, double tol);

}  // namespace rbm::numerics
