#pragma once

#include "rbm/model.hpp"
#include "rbm/normal.hpp"

// Closed-form laws of drifted Brownian motion W_t - c t (Var W_t = sigma^2 t)
// and of the process reset to xR at the epochs of a rate-lambda Poisson process.

namespace rbm::analytic {

/// P(W_s - c s <= a). For s == 0 this is the step 1{a >= 0}.
double drifted_bm_cdf(double a, double s, double c, double sigma);

/// Density of W_s - c s at a (s > 0).
double drifted_bm_pdf(double a, double s, double c, double sigma);

/// P(W_s - c s <= a, W_t - c t <= b) for 0 <= s < t, as a 1-d quadrature of
/// a conditional normal CDF against the marginal at time s.
double drifted_bm_joint_cdf(double s, double t, double a, double b, double c, double sigma);

/// F(u,T) = P(sup_{[0,T]} (W_t - c t) <= u). Exactly 0 for u <= 0.
double sup_cdf_drifted_bm(double u, double T, double c, double sigma);

/// 1 - F(u,T) without cancellation (both tail terms summed directly).
double sup_sf_drifted_bm(double u, double T, double c, double sigma);

/// P(X_t <= u) for a fixed starting point; throws UnsupportedInput for a
/// stationary x0 (use stationary_cdf).
double reset_cdf_1d(double u, double t, const ModelParams& params);

/// Asymmetric Laplace limit law of X_t as t -> infinity.
double stationary_pdf(double x, const ModelParams& params);
double stationary_cdf(double x, const ModelParams& params);
double stationary_sf(double x, const ModelParams& params);
double stationary_mean(const ModelParams& params);
double stationary_variance(const ModelParams& params);

/// Tail rate alpha and prefactor of P(X_inf > u) = prefactor * exp(-alpha (u - xR)), u >= xR.
AsymParams alpha_param(const ModelParams& params);

/// P(X_s <= u, X_t <= w), 0 <= s < t, fixed x0.
double joint_cdf(double s, double t, double u, double w, const ModelParams& params);

/// Density of (X_s, X_t) at (u, w), 0 < s < t, fixed x0.
double joint_density(double s, double t, double u, double w, const ModelParams& params);

/// P(Y_0 <= u, Y_delta <= w) for the process started from its stationary law.
double stationary_joint_cdf(double delta, double u, double w, const ModelParams& params);

/// P(inf_{[s-delta, s]} (W_t - c t) > u, W_{s-delta} > w), 0 < delta < s.
/// Note the second constraint is on the undrifted W.
double win_min_joint(double s, double delta, double u, double w, double c, double sigma);

/// P(inf_{[T, T+Delta]} X_t > u, X_T > v) for u > xR, fixed x0, by conditioning
/// on the age of the last reset before T.
double inf_window_exact(double T, double Delta, double u, double v, const ModelParams& params);

}  // namespace rbm::analytic
