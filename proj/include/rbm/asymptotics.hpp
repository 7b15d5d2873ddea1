#pragma once

#include <string>
#include <utility>

#include "rbm/model.hpp"

// Leading-order tail approximations as u -> infinity, each guarded to the
// parameter regime where it is known to hold. Outside that regime the
// evaluators throw UnsupportedRegime instead of extrapolating.

namespace rbm::asymptotics {

enum class Regime {
  SupFromBelow,     // T3-i: xR <= 0
  SupFromAbove,     // T3-ii: xR > 0
  WindowBelow,      // T4-i: x0 < xR
  WindowAbove,      // T4-ii: x0 >= xR
  StationarySup,    // T6
  JointNegative,    // T7-zneg
  JointMiddle,      // T7-zmid
  JointLargeExact,  // T7-zlarge-exact
};

/// Short tag used in reports, e.g. "T3-i".
std::string regime_tag(Regime r);

struct AsymValue {
  double value = 0.0;
  Regime regime{};
};

/// P(sup_{[0,T]} X_t > u) for sigma = 1, x0 = 0.
AsymValue sup_tail_asym(double u, double T, const ModelParams& params);

/// Quadrature of the single-reset contribution that dominates the xR > 0
/// case: int_0^{log^2 u / u^2} e^{-lambda (T-x)} P(sup_{[0,T-x]} (W - c t) > u - xR) lambda e^{-lambda x} dx.
double sup_tail_single_reset_quadrature(double u, double T, const ModelParams& params);

double K_const(double c, double Delta);
double L_func(double y);

/// P(inf_{[T,T+Delta]} X_t > u, X_T > v) with v = u + r / (u + c T), sigma = 1.
AsymValue inf_window_asym(double u, double r, double T, double Delta, const ModelParams& params);

/// The level v paired with (u, r) in inf_window_asym.
double inf_window_level(double u, double r, double T, const ModelParams& params);

/// P(sup_{[0,T]} Y_t > u) for the stationary process with c = 0.
AsymValue stationary_sup_tail_asym(double u, double T, const ModelParams& params);

/// P(sup_{[0,T]} Y_t > u, Y_T > u z) for the stationary process with c = 0.
/// z = 0 throws UncoveredCase; stationary_joint_zero_bracket gives the bounds.
AsymValue stationary_joint_asym(double u, double z, double T, const ModelParams& params);

/// Lower and upper leading-order bounds for the z = 0 case.
std::pair<double, double> stationary_joint_zero_bracket(double u, double T, const ModelParams& params);

}  // namespace rbm::asymptotics
