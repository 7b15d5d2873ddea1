#include "rbm/series.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "hermite_table.hpp"
#include "rbm/analytic.hpp"
#include "rbm/errors.hpp"
#include "rbm/numerics.hpp"

namespace rbm::series {

namespace {

constexpr double kTableTol = 1e-11;
constexpr std::size_t kTableCells = 4096;
constexpr std::size_t kSweepTableCells = 16384;

// One factor of the simplex integrand as a function of r = sqrt(segment
// length). Backed by a Hermite table when the table verified, otherwise by
// direct evaluation.
class SegmentFactor {
public:
  SegmentFactor(std::function<double(double)> value, std::function<double(double)> deriv, double r_max,
                std::size_t cells, double tol)
      : direct_(std::move(value)) {
    if (r_max > 0.0) {
      detail::HermiteTable t(direct_, deriv, r_max, cells, tol);
      if (t.accurate()) table_.emplace(std::move(t));
    }
  }

  static SegmentFactor zero() { return SegmentFactor(); }

  bool is_zero() const noexcept { return zero_; }

  double at_r(double r) const {
    if (zero_) return 0.0;
    const double v = table_ ? table_->at(r) : direct_(r);
    return std::clamp(v, 0.0, 1.0);
  }

private:
  SegmentFactor() : zero_(true) {}
  std::function<double(double)> direct_;
  std::optional<detail::HermiteTable> table_;
  bool zero_ = false;
};

// F(a, r^2) for the drifted BM supremum, with dF/dr in closed form.
SegmentFactor sup_factor(double a, double r_max, double c, double sigma, std::size_t cells) {
  if (!(a > 0.0)) return SegmentFactor::zero();
  auto value = [=](double r) { return r > 0.0 ? analytic::sup_cdf_drifted_bm(a, r * r, c, sigma) : 1.0; };
  auto deriv = [=](double r) {
    if (!(r > 0.0)) return 0.0;
    return -2.0 * a * analytic::norm_pdf((a + c * r * r) / (sigma * r)) / (sigma * r * r);
  };
  return SegmentFactor(value, deriv, r_max, cells, kTableTol);
}

// Integration range in y = h / (sigma r) for the stationary first factor.
double y_upper(double r, const ModelParams& p) { return 40.0 + std::abs(p.c) * r / p.sigma; }

// Integrates f over [0, upper] with a break at the kink of the stationary density.
double split_quad(const numerics::RealFn& f, double upper, double kink, double tol) {
  numerics::QuadOptions opts;
  opts.abs_tol = tol;
  if (kink > 0.0 && kink < upper)
    return numerics::adaptive_quad(f, 0.0, kink, opts).value + numerics::adaptive_quad(f, kink, upper, opts).value;
  return numerics::adaptive_quad(f, 0.0, upper, opts).value;
}

double stationary_factor_value(double u, double r, const ModelParams& p) {
  const double base = analytic::stationary_cdf(u, p);
  if (!(r > 0.0)) return base;
  const double sr = p.sigma * r;
  const double s = r * r;
  auto f = [&](double y) {
    const double h = sr * y;
    return analytic::stationary_pdf(u - h, p) * analytic::sup_sf_drifted_bm(h, s, p.c, p.sigma);
  };
  const double loss = sr * split_quad(f, y_upper(r, p), (u - p.xR) / sr, 1e-14);
  return std::clamp(base - loss, 0.0, 1.0);
}

double stationary_factor_deriv(double u, double r, const ModelParams& p) {
  const double sr = p.sigma * r;
  if (!(r > 0.0)) return -2.0 * p.sigma * analytic::stationary_pdf(u, p) * analytic::norm_pdf(0.0);
  const double shift = p.c * r / p.sigma;
  auto f = [&](double y) { return analytic::stationary_pdf(u - sr * y, p) * y * analytic::norm_pdf(y + shift); };
  return -2.0 * p.sigma * split_quad(f, y_upper(r, p), (u - p.xR) / sr, 1e-13);
}

SegmentFactor stationary_factor(double u, double r_max, const ModelParams& p, std::size_t cells) {
  auto value = [u, p](double r) { return stationary_factor_value(u, r, p); };
  auto deriv = [u, p](double r) { return stationary_factor_deriv(u, r, p); };
  return SegmentFactor(value, deriv, r_max, cells, 1e-10);
}

// Fills q with sqrt of a uniform point of the unit simplex in n+1 parts
// (the last entry is the remainder).
void draw_unit_simplex_sqrt(std::size_t n, RngStream& rng, double* q) {
  double total = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    q[i] = rng.exponential();
    total += q[i];
  }
  for (std::size_t i = 0; i <= n; ++i) q[i] = std::sqrt(q[i] / total);
}

// Product of factors for one draw at horizon with sqrt_T. q[0] is the first
// segment, q[1..n] the post-reset segments (the last one the remainder).
double product(const SegmentFactor& first, const SegmentFactor& rest, const double* q, std::size_t n,
               double sqrt_T) {
  double g = first.at_r(sqrt_T * q[0]);
  for (std::size_t i = 1; i <= n && g > 0.0; ++i) g *= rest.at_r(sqrt_T * q[i]);
  return g;
}

std::uint64_t term_stream(const SeriesConfig& cfg, std::size_t n) { return derive_stream_id(n, cfg.stream_offset); }

// Weighted series terms given the two factor families and the exact zeroth term.
std::vector<TermEstimate> series_terms(double T, double lambda, double zeroth, const SegmentFactor& first,
                                       const SegmentFactor& rest, const SeriesConfig& cfg, double& skipped) {
  const double mu = lambda * T;
  std::vector<TermEstimate> terms(cfg.n_max + 1);
  terms[0] = {zeroth, 0.0};
  std::vector<double> weight(cfg.n_max + 1, 0.0);
  skipped = 0.0;
  for (std::size_t n = 1; n <= cfg.n_max; ++n) {
    weight[n] = numerics::poisson_pmf(n, mu);
    // A vanishing factor kills every term with n >= 1.
    if (first.is_zero() || rest.is_zero()) weight[n] = 0.0;
    else if (weight[n] < cfg.skip_weight) {
      skipped += weight[n];
      weight[n] = 0.0;
    }
  }
  const double sqrt_T = std::sqrt(T);
  montecarlo::parallel_for(cfg.n_max, cfg.workers, [&](std::size_t k) {
    const std::size_t n = k + 1;
    if (weight[n] == 0.0) return;
    RngStream rng(cfg.seed, term_stream(cfg, n));
    std::vector<double> q(n + 1);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t m = 0; m < cfg.M; ++m) {
      draw_unit_simplex_sqrt(n, rng, q.data());
      const double g = product(first, rest, q.data(), n, sqrt_T);
      sum += g;
      sum_sq += g * g;
    }
    const double M = static_cast<double>(cfg.M);
    const double mean = sum / M;
    const double var = std::max(sum_sq / M - mean * mean, 0.0) * M / (M - 1.0);
    terms[n] = {weight[n] * mean, weight[n] * std::sqrt(var / M)};
  });
  return terms;
}

SeriesResult sum_terms(const std::vector<TermEstimate>& terms, double tail, double skipped) {
  SeriesResult r;
  double var = 0.0;
  for (const auto& t : terms) {
    r.value += t.value;
    var += t.std_err * t.std_err;
  }
  r.mc_std_err = std::sqrt(var);
  r.truncation_bound = tail + skipped;
  return r;
}

void check_horizon(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw ParameterError("series: T must be positive and finite");
}

std::vector<TermEstimate> fixed_terms(double u, double T, const ModelParams& p, const SeriesConfig& cfg,
                                      double& skipped) {
  p.validate();
  cfg.validate();
  check_horizon(T);
  const double x0 = p.fixed_x0();
  const double a0 = u - x0;
  const double aR = u - p.xR;
  const double r_max = std::sqrt(T);
  const auto first = sup_factor(a0, r_max, p.c, p.sigma, kTableCells);
  const auto rest = sup_factor(aR, r_max, p.c, p.sigma, kTableCells);
  const double zeroth = std::exp(-p.lambda * T) * analytic::sup_cdf_drifted_bm(a0, T, p.c, p.sigma);
  return series_terms(T, p.lambda, zeroth, first, rest, cfg, skipped);
}

}  // namespace

void SeriesConfig::validate() const {
  if (M < 2) throw ParameterError("SeriesConfig: M must be >= 2");
  if (workers < 1) throw ParameterError("SeriesConfig: workers must be >= 1");
  if (!(T_max > 0.0) || !std::isfinite(T_max)) throw ParameterError("SeriesConfig: T_max must be positive");
  if (!(grid_step > 0.0) || !(grid_step < T_max)) throw ParameterError("SeriesConfig: need 0 < grid_step < T_max");
  if (!(skip_weight >= 0.0)) throw ParameterError("SeriesConfig: skip_weight must be >= 0");
}

std::vector<double> sample_dirichlet_simplex(std::size_t n, double T, RngStream& rng) {
  if (!(T > 0.0)) throw ParameterError("sample_dirichlet_simplex: T must be positive");
  std::vector<double> s(n + 1);
  double total = 0.0;
  for (auto& x : s) {
    x = rng.exponential();
    total += x;
  }
  s.pop_back();
  for (auto& x : s) x = T * x / total;
  return s;
}

TermEstimate simplex_term_mc(std::size_t n, double T, const SimplexIntegrand& integrand, std::size_t M,
                             RngStream& rng) {
  if (M < 2) throw ParameterError("simplex_term_mc: M must be >= 2");
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    const auto d = sample_dirichlet_simplex(n, T, rng);
    const double g = integrand(d);
    if (!(g >= 0.0 && g <= 1.0)) throw ContractViolation("simplex_term_mc: integrand left [0, 1]");
    sum += g;
    sum_sq += g * g;
  }
  const double Md = static_cast<double>(M);
  const double mean = sum / Md;
  const double var = std::max(sum_sq / Md - mean * mean, 0.0) * Md / (Md - 1.0);
  const double volume = std::exp(static_cast<double>(n) * std::log(T) - std::lgamma(static_cast<double>(n) + 1.0));
  return {volume * mean, volume * std::sqrt(var / Md)};
}

std::vector<TermEstimate> sup_cdf_series_terms(double u, double T, const ModelParams& params,
                                               const SeriesConfig& cfg) {
  double skipped = 0.0;
  return fixed_terms(u, T, params, cfg, skipped);
}

SeriesResult sup_cdf_series(double u, double T, const ModelParams& params, const SeriesConfig& cfg) {
  double skipped = 0.0;
  const auto terms = fixed_terms(u, T, params, cfg, skipped);
  return sum_terms(terms, numerics::poisson_tail(cfg.n_max, params.lambda * T), skipped);
}

std::vector<SeriesResult> sup_cdf_curve(std::span<const double> levels, double T, const ModelParams& params,
                                        const SeriesConfig& cfg, bool shared_randomness) {
  std::vector<SeriesResult> out;
  out.reserve(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    SeriesConfig c = cfg;
    if (!shared_randomness) c.stream_offset = derive_stream_id(cfg.stream_offset, i + 1);
    out.push_back(sup_cdf_series(levels[i], T, params, c));
  }
  return out;
}

std::pair<double, double> sup_cdf_bounds(double u, double T, const ModelParams& params) {
  params.validate();
  check_horizon(T);
  const double a0 = u - params.fixed_x0();
  const double aR = u - params.xR;
  const double F0 = analytic::sup_cdf_drifted_bm(a0, T, params.c, params.sigma);
  const double sfR = analytic::sup_sf_drifted_bm(aR, T, params.c, params.sigma);
  const double lower = std::exp(-params.lambda * T) * analytic::sup_sf_drifted_bm(a0, T, params.c, params.sigma);
  const double upper = 1.0 - F0 * std::exp(-params.lambda * T * sfR);
  return {lower, upper};
}

SeriesResult fpt_survival(double u, double T, const ModelParams& params, const SeriesConfig& cfg) {
  return sup_cdf_series(u, T, params, cfg);
}

MeanFptResult mean_fpt_series(double u, const ModelParams& params, const SeriesConfig& cfg) {
  const double lambda = params.lambda;
  return mean_fpt_series_sweep(u, params, std::span<const double>(&lambda, 1), cfg).front();
}

std::vector<MeanFptResult> mean_fpt_series_sweep(double u, const ModelParams& params,
                                                 std::span<const double> lambdas, const SeriesConfig& cfg) {
  cfg.validate();
  if (lambdas.empty()) return {};
  for (double l : lambdas) {
    ModelParams p = params;
    p.lambda = l;
    p.validate();
  }
  const double a0 = u - params.fixed_x0();
  const double aR = u - params.xR;
  const double h = cfg.grid_step;
  const auto J = static_cast<std::size_t>(std::llround(cfg.T_max / h));
  const double r_max = std::sqrt(static_cast<double>(J) * h);
  const auto first = sup_factor(a0, r_max, params.c, params.sigma, kSweepTableCells);
  const auto rest = sup_factor(aR, r_max, params.c, params.sigma, kSweepTableCells);
  const std::size_t N = cfg.n_max;

  // needed[j][n]: some rate gives the term enough Poisson weight.
  std::vector<std::vector<char>> needed(J, std::vector<char>(N + 1, 0));
  for (std::size_t j = 1; j < J; ++j) {
    const double Tj = static_cast<double>(j) * h;
    for (std::size_t n = 1; n <= N; ++n) {
      double w = 0.0;
      for (double l : lambdas) w = std::max(w, numerics::poisson_pmf(n, l * Tj));
      needed[j][n] = w >= cfg.skip_weight && !first.is_zero() && !rest.is_zero();
    }
  }

  // Term means m[n][j] and their standard errors; one set of draws per n,
  // reused along the whole horizon grid.
  std::vector<std::vector<double>> mean(N + 1, std::vector<double>(J, 0.0));
  std::vector<std::vector<double>> se(N + 1, std::vector<double>(J, 0.0));
  std::vector<double> sqrt_T(J);
  for (std::size_t j = 0; j < J; ++j) sqrt_T[j] = std::sqrt(static_cast<double>(j) * h);

  montecarlo::parallel_for(N, cfg.workers, [&](std::size_t k) {
    const std::size_t n = k + 1;
    std::size_t j_lo = J, j_hi = 0;
    for (std::size_t j = 1; j < J; ++j)
      if (needed[j][n]) {
        j_lo = std::min(j_lo, j);
        j_hi = j + 1;
      }
    if (j_lo >= j_hi) return;
    RngStream rng(cfg.seed, term_stream(cfg, n));
    std::vector<double> q((n + 1) * cfg.M);
    for (std::size_t m = 0; m < cfg.M; ++m) draw_unit_simplex_sqrt(n, rng, &q[m * (n + 1)]);
    const double M = static_cast<double>(cfg.M);
    for (std::size_t j = j_lo; j < j_hi; ++j) {
      if (!needed[j][n]) continue;
      double sum = 0.0, sum_sq = 0.0;
      for (std::size_t m = 0; m < cfg.M; ++m) {
        const double g = product(first, rest, &q[m * (n + 1)], n, sqrt_T[j]);
        sum += g;
        sum_sq += g * g;
      }
      const double mu = sum / M;
      mean[n][j] = mu;
      se[n][j] = std::sqrt(std::max(sum_sq / M - mu * mu, 0.0) / (M - 1.0));
    }
  });

  std::vector<double> zeroth_F(J);
  zeroth_F[0] = a0 > 0.0 ? 1.0 : 0.0;
  for (std::size_t j = 1; j < J; ++j)
    zeroth_F[j] = analytic::sup_cdf_drifted_bm(a0, static_cast<double>(j) * h, params.c, params.sigma);

  std::vector<MeanFptResult> out;
  out.reserve(lambdas.size());
  for (double l : lambdas) {
    double total = 0.0, total_se = 0.0, trunc = 0.0, last = zeroth_F[0];
    total += zeroth_F[0];
    for (std::size_t j = 1; j < J; ++j) {
      const double mu = l * static_cast<double>(j) * h;
      double S = std::exp(-mu) * zeroth_F[j];
      double S_se = 0.0;
      for (std::size_t n = 1; n <= N; ++n) {
        const double w = numerics::poisson_pmf(n, mu);
        if (needed[j][n]) {
          S += w * mean[n][j];
          S_se += w * se[n][j];
        } else if (!first.is_zero() && !rest.is_zero()) {
          trunc += w;
        }
      }
      trunc += numerics::poisson_tail(N, mu);
      total += S;
      // Draws are shared along the grid, so errors are added, not pooled.
      total_se += S_se;
      last = S;
    }
    MeanFptResult r;
    r.estimate.value = h * total;
    r.estimate.std_err = h * total_se;
    r.estimate.half_width_95 = montecarlo::kZ95 * r.estimate.std_err;
    r.estimate.n = cfg.M;
    r.series_truncation = h * trunc;
    r.tail_survival = last;
    out.push_back(r);
  }
  return out;
}

double mean_fpt_exact(double u, double lambda, double sigma) {
  if (!(lambda > 0.0) || !(sigma > 0.0)) throw ParameterError("mean_fpt_exact: need lambda > 0, sigma > 0");
  if (!(u > 0.0)) return 0.0;
  return std::expm1(u * std::sqrt(2.0 * lambda) / sigma) / lambda;
}

double mean_fpt_exact(double u, const ModelParams& params) {
  params.validate();
  if (params.c != 0.0) throw UnsupportedRegime("mean_fpt_exact: closed form needs zero drift");
  if (params.fixed_x0() != params.xR) throw UnsupportedRegime("mean_fpt_exact: closed form needs x0 == xR");
  return mean_fpt_exact(u - params.xR, params.lambda, params.sigma);
}

std::pair<double, double> optimal_lambda(double u, double sigma) {
  if (!(u > 0.0) || !(sigma > 0.0)) throw ParameterError("optimal_lambda: need u > 0, sigma > 0");
  const double scale = sigma * sigma / (u * u);
  return numerics::golden_minimize([&](double l) { return mean_fpt_exact(u, l, sigma); }, 1e-4 * scale,
                                   50.0 * scale, 1e-10 * scale);
}

double stationary_first_segment_cdf(double u, double s, const ModelParams& params) {
  params.validate();
  if (!(s >= 0.0)) throw ParameterError("stationary_first_segment_cdf: s must be >= 0");
  return stationary_factor_value(u, std::sqrt(s), params);
}

SeriesResult stationary_sup_cdf_series(double u, double T, const ModelParams& params, const SeriesConfig& cfg) {
  params.validate();
  cfg.validate();
  check_horizon(T);
  const double r_max = std::sqrt(T);
  const auto first = stationary_factor(u, r_max, params, kTableCells / 4);
  const auto rest = sup_factor(u - params.xR, r_max, params.c, params.sigma, kTableCells);
  const double zeroth = std::exp(-params.lambda * T) * stationary_factor_value(u, r_max, params);
  double skipped = 0.0;
  const auto terms = series_terms(T, params.lambda, zeroth, first, rest, cfg, skipped);
  return sum_terms(terms, numerics::poisson_tail(cfg.n_max, params.lambda * T), skipped);
}

}  // namespace rbm::series
