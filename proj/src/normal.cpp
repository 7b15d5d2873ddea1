#include "rbm/normal.hpp"

#include <cmath>
#include <numbers>

namespace rbm::analytic {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double norm_sf(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double norm_pdf(double x) {
  return std::exp(-0.5 * x * x) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2);
}

double mills_ratio(double x) {
  if (x < 5.0) return norm_sf(x) / norm_pdf(x);
  // R(x) = 1/(x + 1/(x + 2/(x + 3/(x + ...)))), modified Lentz.
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int k = 1; k < 500; ++k) {
    d = x + k * d;
    if (d == 0.0) d = tiny;
    c = x + k / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / f;
}

}  // namespace rbm::analytic
