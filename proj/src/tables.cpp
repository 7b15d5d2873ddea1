#include "rbm/tables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rbm/asymptotics.hpp"
#include "rbm/errors.hpp"
#include "rbm/simulate.hpp"

namespace rbm::tables {

namespace {

std::size_t scaled(std::size_t n, double scale) {
  if (!(scale > 0.0)) throw ParameterError("scale must be positive");
  return std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(static_cast<double>(n) * scale)));
}

}  // namespace

series::SeriesConfig mean_fpt_config(double scale) {
  series::SeriesConfig cfg;
  cfg.n_max = 60;
  cfg.M = scaled(5000, scale);
  cfg.T_max = 30.0;
  cfg.grid_step = 0.01;
  return cfg;
}

std::vector<MeanFptRow> mean_fpt_table(const series::SeriesConfig& cfg) {
  ModelParams p;
  const auto results = series::mean_fpt_series_sweep(1.0, p, kMeanFptLambdas, cfg);
  std::vector<MeanFptRow> rows;
  for (std::size_t i = 0; i < kMeanFptLambdas.size(); ++i)
    rows.push_back({kMeanFptLambdas[i], results[i], series::mean_fpt_exact(1.0, kMeanFptLambdas[i], 1.0)});
  return rows;
}

std::size_t series_argmin(const std::vector<MeanFptRow>& rows) {
  auto it = std::min_element(rows.begin(), rows.end(), [](const MeanFptRow& a, const MeanFptRow& b) {
    return a.series.estimate.value < b.series.estimate.value;
  });
  return static_cast<std::size_t>(it - rows.begin());
}

TailTableConfig tail_table_config(double lambda, double scale) {
  TailTableConfig cfg;
  cfg.lambda = lambda;
  if (lambda != 2.0 && lambda != 3.0) throw ParameterError("tail_table_config: rate must be 2 or 3");
  const auto& ref = lambda == 3.0 ? kTailReferenceRate3 : kTailReferenceRate2;
  for (const auto& r : ref) cfg.levels.push_back(r.u);
  cfg.paths = scaled(20000, scale);
  return cfg;
}

std::vector<TailRow> stationary_tail_table(const TailTableConfig& cfg) {
  ModelParams p;
  p.sigma = cfg.sigma;
  p.lambda = cfg.lambda;
  p.xR = cfg.xR;
  p.x0 = InitialCondition::stationary();
  p.validate();
  const double step = cfg.step;
  const double T = cfg.T;
  const auto mc = montecarlo::estimate_exceedances(
      [&](RngStream& rng) { return simulate::sample_grid_functionals(T, step, std::numeric_limits<double>::infinity(), p, rng).sup; }, cfg.levels,
      cfg.paths, cfg.seed, cfg.workers);
  std::vector<TailRow> rows;
  for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
    const double asym = asymptotics::stationary_sup_tail_asym(cfg.levels[i], T, p).value;
    rows.push_back({cfg.levels[i], mc[i], asym, mc[i].value / asym});
  }
  return rows;
}

}  // namespace rbm::tables
