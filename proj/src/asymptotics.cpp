#include "rbm/asymptotics.hpp"

#include <cmath>

#include "rbm/analytic.hpp"
#include "rbm/errors.hpp"
#include "rbm/numerics.hpp"

namespace rbm::asymptotics {

namespace {

using analytic::norm_cdf;
using analytic::norm_pdf;
using analytic::norm_sf;

void require_unit_sigma(const ModelParams& p, const char* who) {
  if (p.sigma != 1.0) throw UnsupportedRegime(std::string(who) + ": only stated for sigma = 1");
}

void require_zero_drift(const ModelParams& p, const char* who) {
  if (p.c != 0.0) throw UnsupportedRegime(std::string(who) + ": only stated for c = 0");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(std::string(what) + " must be positive and finite");
}

// e^{alpha xR} e^{-alpha u}, combined to avoid overflow.
double tilt(double alpha, double u, const ModelParams& p) { return std::exp(-alpha * (u - p.xR)); }

double stationary_alpha(const ModelParams& p) { return std::sqrt(2.0 * p.lambda) / p.sigma; }

double stationary_bracket(double alpha, double T, const ModelParams& p) {
  numerics::QuadOptions opts;
  opts.abs_tol = 1e-10;
  const double integral =
      numerics::adaptive_quad([&](double s) { return norm_cdf(alpha * p.sigma * std::sqrt(s)); }, 0.0, T, opts).value;
  return norm_cdf(alpha * p.sigma * std::sqrt(T)) + p.lambda * integral;
}

}  // namespace

std::string regime_tag(Regime r) {
  switch (r) {
    case Regime::SupFromBelow: return "T3-i";
    case Regime::SupFromAbove: return "T3-ii";
    case Regime::WindowBelow: return "T4-i";
    case Regime::WindowAbove: return "T4-ii";
    case Regime::StationarySup: return "T6";
    case Regime::JointNegative: return "T7-zneg";
    case Regime::JointMiddle: return "T7-zmid";
    case Regime::JointLargeExact: return "T7-zlarge-exact";
  }
  return "unknown";
}

AsymValue sup_tail_asym(double u, double T, const ModelParams& params) {
  params.validate();
  require_unit_sigma(params, "sup_tail_asym");
  if (params.fixed_x0() != 0.0) throw UnsupportedRegime("sup_tail_asym: only stated for x0 = 0");
  require_positive(T, "T");
  const double l = params.lambda;
  const double c = params.c;
  if (params.xR <= 0.0) return {2.0 * std::exp(-l * T) * norm_sf((u + c * T) / std::sqrt(T)), Regime::SupFromBelow};
  const double v = 4.0 * l * T * T * std::exp(-l * T) / (u * u) * norm_sf((u + c * T - params.xR) / std::sqrt(T));
  return {v, Regime::SupFromAbove};
}

double sup_tail_single_reset_quadrature(double u, double T, const ModelParams& params) {
  params.validate();
  require_positive(T, "T");
  if (!(u > 1.0)) throw DomainError("sup_tail_single_reset_quadrature: needs u > 1");
  const double l = params.lambda;
  const double upper = std::min(T, std::log(u) * std::log(u) / (u * u));
  auto f = [&](double x) {
    return std::exp(-l * (T - x)) * analytic::sup_sf_drifted_bm(u - params.xR, T - x, params.c, params.sigma) * l *
           std::exp(-l * x);
  };
  numerics::QuadOptions opts;
  opts.abs_tol = 1e-300;
  opts.rel_tol = 1e-10;
  return numerics::adaptive_quad(f, 0.0, upper, opts).value;
}

double K_const(double c, double Delta) {
  require_positive(Delta, "Delta");
  const double rd = std::sqrt(Delta);
  const double k = 2.0 / rd * norm_pdf(c * rd) - 2.0 * c * norm_sf(c * rd);
  if (!(k > 0.0)) throw ContractViolation("K_const: constant is not positive");
  return k;
}

double L_func(double y) { return y <= 0.0 ? 1.0 : std::exp(-y) * (1.0 + y); }

double inf_window_level(double u, double r, double T, const ModelParams& params) {
  return u + r / (u + params.c * T);
}

AsymValue inf_window_asym(double u, double r, double T, double Delta, const ModelParams& params) {
  params.validate();
  require_unit_sigma(params, "inf_window_asym");
  require_positive(T, "T");
  require_positive(Delta, "Delta");
  if (!(r >= 0.0)) throw ParameterError("inf_window_asym: r must be >= 0");
  const double x0 = params.fixed_x0();
  const double l = params.lambda;
  const double c = params.c;
  const double common = std::exp(-l * (T + Delta)) * K_const(c, Delta) * L_func(r / T);
  if (x0 < params.xR) {
    const double v = 2.0 * l * common * (T * T * T) / (u * u * u) * norm_sf((u - params.xR + c * T) / std::sqrt(T));
    return {v, Regime::WindowBelow};
  }
  return {common * T / u * norm_sf((u - x0 + c * T) / std::sqrt(T)), Regime::WindowAbove};
}

AsymValue stationary_sup_tail_asym(double u, double T, const ModelParams& params) {
  params.validate();
  require_zero_drift(params, "stationary_sup_tail_asym");
  require_positive(T, "T");
  const double alpha = stationary_alpha(params);
  return {stationary_bracket(alpha, T, params) * tilt(alpha, u, params), Regime::StationarySup};
}

AsymValue stationary_joint_asym(double u, double z, double T, const ModelParams& params) {
  params.validate();
  require_zero_drift(params, "stationary_joint_asym");
  require_positive(T, "T");
  if (z == 0.0)
    throw UncoveredCase(
        "stationary_joint_asym: z = 0 is not covered; only a conjectured bracket is known "
        "(see stationary_joint_zero_bracket)");
  const double alpha = stationary_alpha(params);
  if (z < 0.0) return {stationary_sup_tail_asym(u, T, params).value, Regime::JointNegative};
  if (z < 1.0) return {norm_cdf(alpha * params.sigma * std::sqrt(T)) * tilt(alpha, u, params), Regime::JointMiddle};
  // Y_T > uz >= u already forces the supremum above u.
  if (!(u * z >= params.xR))
    throw DomainError("stationary_joint_asym: closed form for z >= 1 needs u z >= xR");
  return {0.5 * std::exp(-alpha * (u * z - params.xR)), Regime::JointLargeExact};
}

std::pair<double, double> stationary_joint_zero_bracket(double u, double T, const ModelParams& params) {
  params.validate();
  require_zero_drift(params, "stationary_joint_zero_bracket");
  require_positive(T, "T");
  const double alpha = stationary_alpha(params);
  const double e = tilt(alpha, u, params);
  return {norm_cdf(alpha * params.sigma * std::sqrt(T)) * e, stationary_bracket(alpha, T, params) * e};
}

}  // namespace rbm::asymptotics
