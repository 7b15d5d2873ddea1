#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rbm/montecarlo.hpp"
#include "rbm/series.hpp"

// Reproduction of the three reference tables: mean first-passage times over
// a grid of reset rates, and stationary supremum exceedances against their
// tail approximation.

namespace rbm::tables {

struct MeanFptRow {
  double lambda = 0.0;
  series::MeanFptResult series;
  double exact = 0.0;
};

/// Reset rates of the mean-FPT table (u = 1, xR = x0 = 0, sigma = 1, c = 0).
inline constexpr std::array<double, 11> kMeanFptLambdas = {0.1,      0.269812, 0.769812, 1.069812, 1.169812, 1.269812,
                                                           1.369812, 1.469812, 1.769812, 2.269812, 4.269812};
inline constexpr std::array<double, 11> kMeanFptReferenceSeries = {5.315687, 3.996698, 3.188049, 3.096013,
                                                                   3.086052, 3.083074, 3.085691, 3.093229,
                                                                   3.137773, 3.262639, 3.972075};
inline constexpr std::array<double, 11> kMeanFptReferenceExact = {5.639483, 4.019943, 3.193551, 3.10129,
                                                                  3.09131,  3.088277, 3.090955, 3.098411,
                                                                  3.143053, 3.269103, 4.118051};

/// Series configuration of the mean-FPT table, with M scaled by `scale`.
series::SeriesConfig mean_fpt_config(double scale = 1.0);

std::vector<MeanFptRow> mean_fpt_table(const series::SeriesConfig& cfg);

/// Index of the smallest series estimate.
std::size_t series_argmin(const std::vector<MeanFptRow>& rows);

struct TailRow {
  double u = 0.0;
  montecarlo::Estimate mc;  ///< P(sup_{[0,T]} Y_t > u) from discretized stationary paths
  double asym = 0.0;
  double ratio = 0.0;       ///< mc / asym
};

struct TailTableConfig {
  double lambda = 2.0;
  double sigma = 1.0;
  double xR = 1.0;
  double T = 1.0;
  std::vector<double> levels;
  std::size_t paths = 20000;
  double step = 1e-4;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
};

/// Levels and reference values of the two stationary-tail tables.
struct TailReference {
  double u, mc, half_width, asym, ratio;
};
inline constexpr std::array<TailReference, 5> kTailReferenceRate2 = {{{2.5, 0.13215, 0.00469, 0.13677, 0.96621},
                                                                      {3.0, 0.0501, 0.00302, 0.05031518, 0.99572},
                                                                      {3.5, 0.0186, 0.00187, 0.01850992, 1.0049},
                                                                      {4.0, 0.0069, 0.00115, 0.006809419, 1.0133},
                                                                      {4.5, 0.00265, 0.000712, 0.002505, 1.0579}}};
inline constexpr std::array<TailReference, 5> kTailReferenceRate3 = {{{2.0, 0.29895, 0.00634, 0.3237, 0.92353},
                                                                      {2.5, 0.0954, 0.00407, 0.095115, 1.003},
                                                                      {3.0, 0.0293, 0.00234, 0.027948, 1.050788},
                                                                      {3.5, 0.0087, 0.0013, 0.008212, 1.08673},
                                                                      {4.0, 0.00265, 0.000712, 0.002413, 1.0982}}};

/// Default configuration for rate 2 or 3, paths scaled by `scale`.
TailTableConfig tail_table_config(double lambda, double scale = 1.0);

std::vector<TailRow> stationary_tail_table(const TailTableConfig& cfg);

}  // namespace rbm::tables
