#include "rbm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "rbm/errors.hpp"

namespace rbm::numerics {

namespace {

// QUADPACK qk15 abscissae/weights. Odd indices are the embedded Gauss points.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

double checked(const RealFn& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) throw EvaluationError("non-finite integrand value", x);
  return y;
}

Panel gk15(const RealFn& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = checked(f, center - dx);
    const double f2 = checked(f, center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadResult adaptive_quad(const RealFn& f, double a, double b, double tol) {
  QuadOptions opts;
  opts.abs_tol = tol;
  return adaptive_quad(f, a, b, opts);
}

QuadResult adaptive_quad(const RealFn& f, double a, double b, const QuadOptions& opts) {
  if (!(a < b)) {
    if (a == b) return {0.0, 0.0, 1};
    throw ParameterError("adaptive_quad: require a < b");
  }
  if (!(opts.abs_tol >= 0.0) || !(opts.rel_tol >= 0.0) || (opts.abs_tol == 0.0 && opts.rel_tol == 0.0))
    throw ParameterError("adaptive_quad: tolerance must be positive");

  std::priority_queue<Panel> heap;
  const Panel first = gk15(f, a, b);
  heap.push(first);
  double value = first.value;
  double error = first.error;
  std::size_t evals = 15;
  std::size_t panels = 1;

  auto converged = [&] { return error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value)); };

  while (!converged() && panels < opts.max_panels) {
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // cannot split further
    heap.pop();
    const Panel left = gk15(f, worst.a, mid);
    const Panel right = gk15(f, mid, worst.b);
    evals += 30;
    ++panels;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to shed the drift of the running updates.
  double v = 0.0, e = 0.0;
  while (!heap.empty()) {
    v += heap.top().value;
    e += heap.top().error;
    heap.pop();
  }
  return {v, e, evals};
}

QuadResult quad_exp_weight(const RealFn& f, double rate, const QuadOptions& opts) {
  if (!(rate > 0.0)) throw ParameterError("quad_exp_weight: rate must be positive");
  return adaptive_quad([&](double q) { return f(-std::log1p(-q) / rate); }, 0.0, 1.0, opts);
}

QuadResult quad_exp_weight(const RealFn& f, double rate, double upper, const QuadOptions& opts) {
  if (!(rate > 0.0)) throw ParameterError("quad_exp_weight: rate must be positive");
  if (!(upper > 0.0)) return {0.0, 0.0, 1};
  const double qmax = -std::expm1(-rate * upper);
  return adaptive_quad([&](double q) { return f(-std::log1p(-q) / rate); }, 0.0, qmax, opts);
}

double invert_monotone(const RealFn& f, double target, double lo, double hi, double tol) {
  if (!(lo <= hi)) throw ParameterError("invert_monotone: require lo <= hi");
  if (!(tol > 0.0)) throw ParameterError("invert_monotone: tol must be positive");
  const double flo = f(lo);
  const double fhi = f(hi);
  if (!(flo <= target && target <= fhi))
    throw BracketError("invert_monotone: target " + std::to_string(target) + " not in [" +
                       std::to_string(flo) + ", " + std::to_string(fhi) + "]");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (f(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double poisson_pmf(std::size_t n, double mu) {
  if (mu <= 0.0) return n == 0 ? 1.0 : 0.0;
  const double k = static_cast<double>(n);
  return std::exp(k * std::log(mu) - mu - std::lgamma(k + 1.0));
}

double poisson_tail(std::size_t n, double mu) {
  if (!(mu > 0.0)) throw ParameterError("poisson_tail: mu must be positive");
  if (static_cast<double>(n) + 1.0 >= mu) {
    // Terms k > n decrease geometrically once k > mu; sum upward.
    double sum = 0.0;
    double term = poisson_pmf(n + 1, mu);
    for (std::size_t k = n + 1; term > 0.0; ++k) {
      sum += term;
      if (term < sum * 1e-17) break;
      term *= mu / static_cast<double>(k + 1);
    }
    return std::min(1.0, sum);
  }
  // n below the mode: the CDF side is the smaller one; sum downward from n.
  double cdf = 0.0;
  double term = poisson_pmf(n, mu);
  for (std::size_t k = n + 1; k-- > 0;) {
    cdf += term;
    if (term < cdf * 1e-17) break;
    term *= static_cast<double>(k) / mu;
  }
  return std::clamp(1.0 - cdf, 0.0, 1.0);
}

std::pair<double, double> golden_minimize(const RealFn& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw ParameterError("golden_minimize: require lo < hi");
  if (!(tol > 0.0)) throw ParameterError("golden_minimize: tol must be positive");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

}  // namespace rbm::numerics
