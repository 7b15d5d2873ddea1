#pragma once

namespace rbm::analytic {

/// Standard normal distribution function.
double norm_cdf(double x);
/// Standard normal density.
double norm_pdf(double x);
/// Upper tail 1 - norm_cdf(x), evaluated through erfc so it keeps full
/// relative precision for large x.
double norm_sf(double x);
/// Mills ratio norm_sf(x) / norm_pdf(x); continued fraction for x >= 5.
double mills_ratio(double x);

}  // namespace rbm::analytic
