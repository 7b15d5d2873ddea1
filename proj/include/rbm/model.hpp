#pragma once

#include <optional>

namespace rbm {

/// Starting point of the process: a fixed level, or a draw from the
/// stationary (asymmetric Laplace) law.
class InitialCondition {
public:
  static InitialCondition fixed(double x0) { return InitialCondition(x0); }
  static InitialCondition stationary() { return InitialCondition(); }

  bool is_stationary() const noexcept { return !value_.has_value(); }
  bool is_fixed() const noexcept { return value_.has_value(); }
  /// Throws UnsupportedInput when stationary.
  double value() const;

  bool operator==(const InitialCondition&) const = default;

private:
  InitialCondition() = default;
  explicit InitialCondition(double x0) : value_(x0) {}
  std::optional<double> value_;
};

/// Brownian motion W with Var W_t = sigma^2 t, drift -c, reset to xR at the
/// jump epochs of an independent Poisson process of rate lambda.
struct ModelParams {
  double sigma = 1.0;
  double lambda = 1.0;
  double c = 0.0;
  InitialCondition x0 = InitialCondition::fixed(0.0);
  double xR = 0.0;

  /// sigma > 0, lambda > 0, all fields finite. Throws ParameterError.
  void validate() const;
  /// As validate() but admits lambda == 0 (no resets) for path sampling.
  void validate_for_sampling() const;

  /// x0 value; throws UnsupportedInput for a stationary start.
  double fixed_x0() const { return x0.value(); }
};

struct AsymParams {
  double alpha = 0.0;      ///< exponential tail rate of the stationary law
  double prefactor = 0.0;  ///< P(X_inf > u) = prefactor * exp(-alpha (u - xR)), u >= xR
};

}  // namespace rbm
