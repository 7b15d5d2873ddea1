#include "rbm/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rbm/errors.hpp"
#include "rbm/numerics.hpp"

namespace rbm {

double InitialCondition::value() const {
  if (!value_) throw UnsupportedInput("initial condition is stationary, not a fixed level");
  return *value_;
}

namespace {
void check_common(const ModelParams& p) {
  if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) throw ParameterError("sigma must be positive and finite");
  if (!std::isfinite(p.c)) throw ParameterError("c must be finite");
  if (!std::isfinite(p.xR)) throw ParameterError("xR must be finite");
  if (p.x0.is_fixed() && !std::isfinite(p.x0.value())) throw ParameterError("x0 must be finite");
}
}  // namespace

void ModelParams::validate() const {
  check_common(*this);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be positive and finite");
}

void ModelParams::validate_for_sampling() const {
  check_common(*this);
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be nonnegative and finite");
}

namespace analytic {

using numerics::adaptive_quad;
using numerics::quad_exp_weight;
using numerics::QuadOptions;

namespace {

constexpr double kOneDimTol = 1e-10;
constexpr double kNestedTol = 1e-8;
// Standardized Gaussian integrals are truncated to [-12, 12]; the mass
// outside is below 4e-33.
constexpr double kZCut = 12.0;

QuadOptions abs_tol(double tol) {
  QuadOptions o;
  o.abs_tol = tol;
  return o;
}

double kappa(const ModelParams& p) { return std::sqrt(p.c * p.c + 2.0 * p.lambda * p.sigma * p.sigma); }

// Rates of the asymmetric Laplace stationary law above and below xR, and
// its mass above xR. With drift -c the upper tail is the thinner one.
struct LaplaceRates {
  double up, down, up_mass;
};

LaplaceRates laplace_rates(const ModelParams& p) {
  const double k = kappa(p);
  const double s2 = p.sigma * p.sigma;
  const double two_l = 2.0 * p.lambda;
  // (k - |c|) written as 2 lambda sigma^2 / (k + |c|) to avoid cancellation.
  const double up = p.c < 0.0 ? two_l / (k - p.c) : (k + p.c) / s2;
  const double down = p.c > 0.0 ? two_l / (k + p.c) : (k - p.c) / s2;
  return {up, down, down / (up + down)};
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(std::string(what) + " must be positive and finite");
}

// lambda * int_0^upper P(W_x - c x <= a) e^{-lambda x} dx
double exp_weighted_cdf_integral(double a, double upper, const ModelParams& p, double tol) {
  if (!(upper > 0.0)) return 0.0;
  return quad_exp_weight([&](double x) { return drifted_bm_cdf(a, x, p.c, p.sigma); }, p.lambda, upper,
                         abs_tol(tol))
      .value;
}

// lambda * int_0^upper p_x(a) e^{-lambda x} dx with x = y^2 to absorb the
// 1/sqrt(x) factor of the Gaussian density.
double exp_weighted_pdf_integral(double a, double upper, const ModelParams& p) {
  if (!(upper > 0.0)) return 0.0;
  const double norm = 2.0 / (p.sigma * std::sqrt(2.0 * std::numbers::pi));
  auto f = [&](double y) {
    const double x = y * y;
    const double m = a + p.c * x;
    return norm * std::exp(-m * m / (2.0 * p.sigma * p.sigma * x)) * p.lambda * std::exp(-p.lambda * x);
  };
  return adaptive_quad(f, 0.0, std::sqrt(upper), abs_tol(kOneDimTol)).value;
}

}  // namespace

double drifted_bm_cdf(double a, double s, double c, double sigma) {
  if (s <= 0.0) return a >= 0.0 ? 1.0 : 0.0;
  return norm_cdf((a + c * s) / (sigma * std::sqrt(s)));
}

double drifted_bm_pdf(double a, double s, double c, double sigma) {
  const double sd = sigma * std::sqrt(s);
  return norm_pdf((a + c * s) / sd) / sd;
}

double drifted_bm_joint_cdf(double s, double t, double a, double b, double c, double sigma) {
  if (!(s >= 0.0) || !(t > s)) throw ParameterError("drifted_bm_joint_cdf: require 0 <= s < t");
  if (s == 0.0) return a >= 0.0 ? drifted_bm_cdf(b, t, c, sigma) : 0.0;
  const double rs = sigma * std::sqrt(s);
  const double rd = sigma * std::sqrt(t - s);
  const double zmax = (a + c * s) / rs;
  // W_s - c s = rs*z - c s; the increment to time t is N(-c (t-s), sigma^2 (t-s)).
  auto f = [&](double z) { return norm_pdf(z) * norm_cdf((b + c * t - rs * z) / rd); };
  double lo = -kZCut;
  double hi = std::min(zmax, kZCut);
  if (zmax < -kZCut) {
    lo = zmax - 30.0;
    hi = zmax;
  }
  if (!(hi > lo)) return 0.0;
  return adaptive_quad(f, lo, hi, abs_tol(kOneDimTol * 0.1)).value;
}

double sup_cdf_drifted_bm(double u, double T, double c, double sigma) {
  require_positive(T, "T");
  require_positive(sigma, "sigma");
  if (u <= 0.0) return 0.0;
  const double rt = sigma * std::sqrt(T);
  const double a1 = (u + c * T) / rt;
  const double a2 = (u - c * T) / rt;
  // exp(-2uc/sigma^2) * Psi(a2); for a2 >= 5 use exp(-2uc/sigma^2) phi(a2) = phi(a1).
  const double reflected =
      a2 < 5.0 ? std::exp(-2.0 * u * c / (sigma * sigma)) * norm_sf(a2) : norm_pdf(a1) * mills_ratio(a2);
  return std::clamp(norm_cdf(a1) - reflected, 0.0, 1.0);
}

double sup_sf_drifted_bm(double u, double T, double c, double sigma) {
  require_positive(T, "T");
  require_positive(sigma, "sigma");
  if (u <= 0.0) return 1.0;
  const double rt = sigma * std::sqrt(T);
  const double a1 = (u + c * T) / rt;
  const double a2 = (u - c * T) / rt;
  const double reflected =
      a2 < 5.0 ? std::exp(-2.0 * u * c / (sigma * sigma)) * norm_sf(a2) : norm_pdf(a1) * mills_ratio(a2);
  return std::clamp(norm_sf(a1) + reflected, 0.0, 1.0);
}

double reset_cdf_1d(double u, double t, const ModelParams& params) {
  params.validate();
  require_positive(t, "t");
  if (params.x0.is_stationary())
    throw UnsupportedInput("reset_cdf_1d: stationary x0 is served by stationary_cdf");
  const double x0 = params.fixed_x0();
  const double no_reset = std::exp(-params.lambda * t) * drifted_bm_cdf(u - x0, t, params.c, params.sigma);
  const double after_reset = exp_weighted_cdf_integral(u - params.xR, t, params, kOneDimTol);
  return std::clamp(no_reset + after_reset, 0.0, 1.0);
}

double stationary_pdf(double x, const ModelParams& params) {
  params.validate();
  const auto r = laplace_rates(params);
  const double d = x - params.xR;
  return params.lambda / kappa(params) * std::exp(d >= 0.0 ? -r.up * d : r.down * d);
}

double stationary_sf(double x, const ModelParams& params) {
  params.validate();
  const auto r = laplace_rates(params);
  const double d = x - params.xR;
  if (d >= 0.0) return r.up_mass * std::exp(-r.up * d);
  return 1.0 - (1.0 - r.up_mass) * std::exp(r.down * d);
}

double stationary_cdf(double x, const ModelParams& params) {
  params.validate();
  const auto r = laplace_rates(params);
  const double d = x - params.xR;
  if (d < 0.0) return (1.0 - r.up_mass) * std::exp(r.down * d);
  return 1.0 - r.up_mass * std::exp(-r.up * d);
}

double stationary_mean(const ModelParams& params) {
  params.validate();
  return params.xR - params.c / params.lambda;
}

double stationary_variance(const ModelParams& params) {
  params.validate();
  return params.sigma * params.sigma / params.lambda + params.c * params.c / (params.lambda * params.lambda);
}

AsymParams alpha_param(const ModelParams& params) {
  params.validate();
  const auto r = laplace_rates(params);
  return {r.up, r.up_mass};
}

double joint_cdf(double s, double t, double u, double w, const ModelParams& params) {
  params.validate();
  if (!(s >= 0.0) || !(t > s) || !std::isfinite(t)) throw ParameterError("joint_cdf: require 0 <= s < t");
  if (params.x0.is_stationary())
    throw UnsupportedInput("joint_cdf: stationary x0 is served by stationary_joint_cdf");
  const double x0 = params.fixed_x0();
  const double lam = params.lambda;
  const double a = u - params.xR;
  const double b = w - params.xR;

  // No reset on [0, t].
  const double t1 =
      std::exp(-lam * t) * drifted_bm_joint_cdf(s, t, u - x0, w - x0, params.c, params.sigma);

  // Resets before s, none in (s, t]; x is the age of the last reset at time s.
  double t2 = 0.0;
  if (s > 0.0) {
    auto inner = [&](double x) {
      return drifted_bm_joint_cdf(x, t - s + x, a, b, params.c, params.sigma);
    };
    t2 = std::exp(-lam * (t - s)) *
         quad_exp_weight(inner, lam, s, abs_tol(kNestedTol * 0.1)).value;
  }

  // At least one reset in (s, t]: X_s and X_t decouple.
  const double marginal_s = s > 0.0 ? reset_cdf_1d(u, s, params) : (u >= x0 ? 1.0 : 0.0);
  const double t3 = marginal_s * exp_weighted_cdf_integral(b, t - s, params, kOneDimTol);

  return std::clamp(t1 + t2 + t3, 0.0, 1.0);
}

double joint_density(double s, double t, double u, double w, const ModelParams& params) {
  params.validate();
  if (!(s > 0.0) || !(t > s) || !std::isfinite(t))
    throw ParameterError("joint_density: require 0 < s < t (X_0 has no density for fixed x0)");
  if (params.x0.is_stationary()) throw UnsupportedInput("joint_density: stationary x0 not supported");
  const double x0 = params.fixed_x0();
  const double lam = params.lambda;
  const double c = params.c;
  const double sg = params.sigma;

  const double increment = drifted_bm_pdf(w - u, t - s, c, sg);
  const double start_at_s = drifted_bm_pdf(u - x0, s, c, sg);
  const double reset_at_s = exp_weighted_pdf_integral(u - params.xR, s, params);

  const double d1 = std::exp(-lam * t) * start_at_s * increment;
  const double d2 = std::exp(-lam * (t - s)) * increment * reset_at_s;
  const double d3 = (std::exp(-lam * s) * start_at_s + reset_at_s) *
                    exp_weighted_pdf_integral(w - params.xR, t - s, params);
  return std::max(0.0, d1 + d2 + d3);
}

double stationary_joint_cdf(double delta, double u, double w, const ModelParams& params) {
  params.validate();
  require_positive(delta, "delta");
  const double lam = params.lambda;
  const double a = u - params.xR;
  const double b = w - params.xR;

  // No reset in (0, delta]: S is the age of the last reset at time 0.
  auto inner = [&](double s) { return drifted_bm_joint_cdf(s, s + delta, a, b, params.c, params.sigma); };
  const double t1 = std::exp(-lam * delta) * quad_exp_weight(inner, lam, abs_tol(kNestedTol * 0.1)).value;
  // A reset in (0, delta]: independent of Y_0.
  const double t2 = stationary_cdf(u, params) * exp_weighted_cdf_integral(b, delta, params, kOneDimTol);
  return std::clamp(t1 + t2, 0.0, 1.0);
}

double win_min_joint(double s, double delta, double u, double w, double c, double sigma) {
  require_positive(sigma, "sigma");
  if (!(delta > 0.0) || !(s > delta) || !std::isfinite(s))
    throw ParameterError("win_min_joint: require 0 < delta < s");
  const double t0 = s - delta;
  const double sd = sigma * std::sqrt(t0);
  // y = W_{t0} = sd * z must satisfy y > w and y - c t0 > u; afterwards the
  // drifted path must stay above u for delta, i.e. the reversed-drift
  // supremum of the increment stays below y - c t0 - u.
  const double zlo = std::max(w, u + c * t0) / sd;
  auto f = [&](double z) {
    const double h = sd * z - c * t0 - u;
    if (h <= 0.0) return 0.0;
    return norm_pdf(z) * sup_cdf_drifted_bm(h, delta, -c, sigma);
  };
  double lo = zlo;
  if (lo < -kZCut) lo = -kZCut;
  const double hi = std::max(lo, 0.0) + 40.0;
  // The result is at most Psi(zlo); tolerance is taken relative to that bound
  // so deep-tail values keep their relative accuracy.
  QuadOptions opts;
  opts.abs_tol = 1e-10 * std::min(1.0, norm_sf(lo));
  opts.rel_tol = 1e-11;
  if (opts.abs_tol == 0.0) return 0.0;
  return std::clamp(adaptive_quad(f, lo, hi, opts).value, 0.0, 1.0);
}

double inf_window_exact(double T, double Delta, double u, double v, const ModelParams& params) {
  params.validate();
  require_positive(T, "T");
  require_positive(Delta, "Delta");
  if (params.x0.is_stationary()) throw UnsupportedInput("inf_window_exact: requires a fixed x0");
  if (!(u > params.xR))
    throw DomainError("inf_window_exact: decomposition holds only for u > xR (got u=" + std::to_string(u) +
                      ", xR=" + std::to_string(params.xR) + ")");
  const double x0 = params.fixed_x0();
  const double lam = params.lambda;
  const double c = params.c;
  const double sg = params.sigma;

  const double no_reset =
      std::exp(-lam * (T + Delta)) * win_min_joint(T + Delta, Delta, u - x0, v - x0 + c * T, c, sg);

  auto integrand = [&](double age) {
    return lam * std::exp(-lam * age) * win_min_joint(age + Delta, Delta, u - params.xR, v - params.xR + c * age, c, sg);
  };
  QuadOptions opts;
  opts.abs_tol = 1e-300;
  opts.rel_tol = 1e-8;
  const double with_reset = std::exp(-lam * Delta) * adaptive_quad(integrand, 0.0, T, opts).value;
  return std::clamp(no_reset + with_reset, 0.0, 1.0);
}

}  // namespace analytic
}  // namespace rbm
