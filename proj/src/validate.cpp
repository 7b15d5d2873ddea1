#include "rbm/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <tuple>

#include "rbm/analytic.hpp"
#include "rbm/asymptotics.hpp"
#include "rbm/errors.hpp"
#include "rbm/montecarlo.hpp"
#include "rbm/numerics.hpp"
#include "rbm/series.hpp"
#include "rbm/simulate.hpp"
#include "rbm/tables.hpp"

namespace rbm::validate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ModelParams make(double sigma, double lambda, double c, double x0, double xR) {
  ModelParams p;
  p.sigma = sigma;
  p.lambda = lambda;
  p.c = c;
  p.x0 = InitialCondition::fixed(x0);
  p.xR = xR;
  return p;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

class Suite {
public:
  Suite(const Options& o, Report& r, std::string name) : o_(o), r_(r), name_(std::move(name)) {}

  // Passes when observed <= threshold * tol_scale.
  void at_most(const std::string& check, double observed, double threshold, std::string detail = {}) {
    const double th = threshold * o_.tol_scale;
    r_.checks.push_back({name_, check, observed <= th, observed, th, std::move(detail)});
  }

  void at_least(const std::string& check, double observed, double threshold, std::string detail = {}) {
    r_.checks.push_back({name_, check, observed >= threshold, observed, threshold, std::move(detail)});
  }

  void holds(const std::string& check, bool ok, std::string detail = {}) {
    at_most(check, ok ? 0.0 : 1.0, 0.5, std::move(detail));
  }

  // Runs body; an exception becomes a failed check of that name.
  void guarded(const std::string& check, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      r_.checks.push_back({name_, check, false, kInf, 0.0, std::string("exception: ") + e.what()});
    }
  }

  std::size_t budget(std::size_t n) const {
    return std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(static_cast<double>(n) * o_.scale)));
  }

  std::uint64_t seed(std::uint64_t tag) const { return derive_stream_id(o_.seed, tag); }
  // The table commands run on the unmixed seed; checks that reproduce them do too.
  std::uint64_t raw_seed() const { return o_.seed; }
  std::size_t workers() const { return o_.workers; }

  series::SeriesConfig series_cfg(std::uint64_t tag) const {
    series::SeriesConfig cfg;
    cfg.M = budget(5000);
    cfg.seed = seed(tag);
    cfg.workers = o_.workers;
    return cfg;
  }

private:
  const Options& o_;
  Report& r_;
  std::string name_;
};

// Largest range violation or decrease of a sequence meant to be a CDF.
double cdf_violation(const std::vector<double>& v) {
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    worst = std::max({worst, -v[i], v[i] - 1.0});
    if (i > 0) worst = std::max(worst, v[i - 1] - v[i]);
  }
  return worst;
}

// Largest step away from 1 along a sequence of ratios, beyond the allowed
// oracle error of the two points involved.
double trend_violation(const std::vector<double>& ratio, const std::vector<double>& err) {
  double worst = -kInf;
  for (std::size_t i = 1; i < ratio.size(); ++i)
    worst = std::max(worst, std::abs(1.0 - ratio[i]) - std::abs(1.0 - ratio[i - 1]) - err[i] - err[i - 1]);
  return worst;
}

std::string list(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ",") + fmt(x);
  return s;
}

void analytic_suite(Suite& s) {
  const std::vector<ModelParams> sets = {make(1.0, 1.0, 0.5, 0.0, 0.5), make(1.3, 2.0, -0.4, 0.3, -0.2)};
  const auto grid = linspace(-4.0, 6.0, 41);

  s.guarded("cdf_range_and_monotone", [&] {
    double worst = 0.0;
    for (const auto& p : sets) {
      std::vector<std::vector<double>> curves(7);
      for (double u : grid) {
        curves[0].push_back(analytic::reset_cdf_1d(u, 1.3, p));
        curves[1].push_back(analytic::stationary_cdf(u, p));
        curves[2].push_back(analytic::sup_cdf_drifted_bm(u, 0.7, p.c, p.sigma));
        curves[3].push_back(analytic::joint_cdf(0.4, 1.1, u, 0.5, p));
        curves[4].push_back(analytic::joint_cdf(0.4, 1.1, 0.5, u, p));
        curves[5].push_back(analytic::stationary_joint_cdf(0.6, u, 0.2, p));
        curves[6].push_back(analytic::stationary_joint_cdf(0.6, 0.2, u, p));
      }
      for (const auto& c : curves) worst = std::max(worst, cdf_violation(c));
    }
    s.at_most("cdf_range_and_monotone", worst, 1e-9, "largest range violation or decrease on a 41-point grid");
  });

  s.guarded("one_dim_to_stationary", [&] {
    double worst = 0.0;
    for (const auto& p : sets)
      for (double u : grid)
        worst = std::max(worst, std::abs(analytic::reset_cdf_1d(u, 40.0 / p.lambda, p) - analytic::stationary_cdf(u, p)));
    s.at_most("one_dim_to_stationary", worst, 1e-4, "t = 40 / lambda");
  });

  s.guarded("joint_marginals", [&] {
    double worst = 0.0;
    for (const auto& p : sets)
      for (double u : linspace(-2.0, 3.0, 11)) {
        worst = std::max(worst, std::abs(analytic::joint_cdf(0.4, 1.1, u, 60.0, p) - analytic::reset_cdf_1d(u, 0.4, p)));
        worst = std::max(worst, std::abs(analytic::joint_cdf(0.4, 1.1, 60.0, u, p) - analytic::reset_cdf_1d(u, 1.1, p)));
      }
    s.at_most("joint_marginals", worst, 1e-7, "other level at 60");
  });

  s.guarded("stationary_tail_closed_form", [&] {
    double worst = 0.0;
    for (const auto& p : sets) {
      const auto a = analytic::alpha_param(p);
      for (double d : linspace(0.0, 8.0, 33)) {
        const double closed = a.prefactor * std::exp(-a.alpha * d);
        worst = std::max(worst, std::abs(analytic::stationary_sf(p.xR + d, p) - closed));
      }
    }
    s.at_most("stationary_tail_closed_form", worst, 1e-14);
  });

  s.guarded("stationary_joint_limits", [&] {
    double top = 0.0, mixing = 0.0;
    for (const auto& p : sets) {
      top = std::max(top, std::abs(1.0 - analytic::stationary_joint_cdf(0.6, 60.0, 60.0, p)));
      for (double u : {-1.0, 0.0, 0.7})
        for (double w : {-0.5, 0.4, 1.5})
          mixing = std::max(mixing, std::abs(analytic::stationary_joint_cdf(40.0 / p.lambda, u, w, p) -
                                             analytic::stationary_cdf(u, p) * analytic::stationary_cdf(w, p)));
    }
    s.at_most("stationary_joint_total_mass", top, 1e-7);
    s.at_most("stationary_joint_mixing", mixing, 1e-3, "delta = 40 / lambda");
  });

  s.guarded("stationary_moments", [&] {
    double worst = 0.0;
    for (const auto& p : sets) {
      const double m = analytic::stationary_mean(p);
      const double v = analytic::stationary_variance(p);
      numerics::QuadOptions q;
      q.abs_tol = 1e-12;
      const double reach = 80.0 * std::sqrt(v);
      auto moment = [&](const numerics::RealFn& g) {
        auto f = [&](double x) { return g(x) * analytic::stationary_pdf(x, p); };
        return numerics::adaptive_quad(f, p.xR - reach, p.xR, q).value +
               numerics::adaptive_quad(f, p.xR, p.xR + reach, q).value;
      };
      worst = std::max(worst, std::abs(moment([](double) { return 1.0; }) - 1.0));
      worst = std::max(worst, std::abs(moment([](double x) { return x; }) - m));
      worst = std::max(worst, std::abs(moment([&](double x) { return (x - m) * (x - m); }) - v));
    }
    s.at_most("stationary_moments", worst, 1e-6, "mass, mean and variance by quadrature");
  });
}

void numerics_suite(Suite& s) {
  s.guarded("quad_polynomial_exact", [&] {
    double worst = 0.0;
    for (int d = 0; d <= 22; ++d) {
      const double a = -0.3, b = 1.7;
      auto f = [d](double x) { return (d + 1.0) * std::pow(x, d); };
      const double exact = std::pow(b, d + 1) - std::pow(a, d + 1);
      const auto r = numerics::adaptive_quad(f, a, b, 1e-14);
      worst = std::max(worst, std::abs(r.value - exact) / std::max(1.0, std::abs(exact)));
    }
    s.at_most("quad_polynomial_exact", worst, 1e-13, "monomials of degree 0..22");
  });

  s.guarded("invert_monotone_identity", [&] {
    RngStream rng(s.seed(101), 0);
    double worst = 0.0;
    auto f = [](double x) { return x * x * x + x; };
    for (int i = 0; i < 100; ++i) {
      const double x = -3.0 + 6.0 * rng.uniform();
      worst = std::max(worst, std::abs(numerics::invert_monotone(f, f(x), -3.0, 3.0, 1e-12) - x));
    }
    s.at_most("invert_monotone_identity", worst, 2e-12, "100 random points of x^3 + x");
  });

  s.guarded("poisson_tail_monotone", [&] {
    double worst = 0.0;
    const auto mus = linspace(0.1, 50.0, 60);
    for (std::size_t j = 0; j < mus.size(); ++j)
      for (std::size_t n = 0; n <= 80; ++n) {
        const double t = numerics::poisson_tail(n, mus[j]);
        worst = std::max({worst, -t, t - 1.0});
        if (n > 0) worst = std::max(worst, t - numerics::poisson_tail(n - 1, mus[j]));
        if (j > 0) worst = std::max(worst, numerics::poisson_tail(n, mus[j - 1]) - t);
      }
    s.at_most("poisson_tail_monotone", worst, 1e-15);
  });
}

void simulate_suite(Suite& s) {
  const ModelParams p = make(1.0, 1.0, 0.5, 0.5, 0.5);
  const double T = 1.0;

  s.guarded("exact_sup_vs_series", [&] {
    const auto levels = linspace(0.6, 3.0, 10);
    const std::size_t n = s.budget(100000);
    const auto mc = montecarlo::estimate_cdf([&](RngStream& r) { return simulate::sample_sup(T, p, r); }, levels, n,
                                             s.seed(201), s.workers());
    const auto sc = series::sup_cdf_curve(levels, T, p, s.series_cfg(202), true);
    double worst = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const double se = std::hypot(std::max(mc[i].std_err, 1.0 / static_cast<double>(n)), sc[i].mc_std_err);
      worst = std::max(worst, (std::abs(mc[i].value - sc[i].value) - sc[i].truncation_bound) / se);
    }
    s.at_most("exact_sup_vs_series", worst, 3.0, "largest deviation in combined standard errors, 10 levels");
  });

  s.guarded("trajectory_reproducible", [&] {
    const ModelParams q = make(1.0, 2.0, 1.0, 0.0, 1.0);
    RngStream a(s.seed(203), 7), b(s.seed(203), 7);
    const auto ta = simulate::sample_path(3.0, 0.01, q, a);
    const auto tb = simulate::sample_path(3.0, 0.01, q, b);
    s.holds("trajectory_reproducible", ta.times == tb.times && ta.values == tb.values &&
                                           ta.reset_epochs == tb.reset_epochs && ta.left_limits == tb.left_limits);
  });

  s.guarded("grid_sup_below_exact", [&] {
    const std::vector<double> levels = {1.5, 2.0, 2.5};
    const std::size_t n = s.budget(20000);
    const auto exact = montecarlo::estimate_exceedances([&](RngStream& r) { return simulate::sample_sup(T, p, r); },
                                                        levels, n, s.seed(204), s.workers());
    const auto grid = montecarlo::estimate_exceedances(
        [&](RngStream& r) { return simulate::sample_grid_functionals(T, 0.01, kInf, p, r).sup; }, levels, n,
        s.seed(205), s.workers());
    double worst = -kInf;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const double se = std::max(std::hypot(exact[i].std_err, grid[i].std_err), 1.0 / static_cast<double>(n));
      worst = std::max(worst, (grid[i].value - exact[i].value) / se);
    }
    s.at_most("grid_sup_below_exact", worst, 3.0, "step 0.01; excess of grid over exact in standard errors");
  });
}

void montecarlo_suite(Suite& s) {
  s.guarded("worker_invariance", [&] {
    auto sampler = [](RngStream& r) { return r.normal() + r.exponential(); };
    auto ind = [](RngStream& r) { return r.uniform() < 0.3; };
    const std::size_t n = 30000;
    const auto m1 = montecarlo::estimate_mean(sampler, n, s.seed(301), 1);
    const auto p1 = montecarlo::estimate_prob(ind, n, s.seed(302), 1);
    bool same = true;
    for (std::size_t w : {2, 8}) {
      const auto m = montecarlo::estimate_mean(sampler, n, s.seed(301), w);
      const auto p = montecarlo::estimate_prob(ind, n, s.seed(302), w);
      same = same && m.value == m1.value && m.std_err == m1.std_err && p.value == p1.value;
    }
    s.holds("worker_invariance", same, "workers 1, 2, 8 give identical estimates");
  });

  s.guarded("interval_coverage", [&] {
    int covered = 0;
    for (std::uint64_t k = 0; k < 100; ++k) {
      const auto e = montecarlo::estimate_prob([](RngStream& r) { return r.uniform() < 0.3; }, 2000,
                                               derive_stream_id(s.seed(303), k));
      covered += std::abs(e.value - 0.3) <= e.half_width_95 ? 1 : 0;
    }
    s.at_least("interval_coverage", covered, 90, "replications out of 100 whose 95% interval holds p = 0.3");
  });
}

void series_suite(Suite& s) {
  s.guarded("curve_monotone", [&] {
    const ModelParams p = make(1.0, 1.0, 0.5, 0.0, 0.5);
    const auto levels = linspace(0.05, 3.0, 50);
    const auto c = series::sup_cdf_curve(levels, 1.0, p, s.series_cfg(401), true);
    double worst = -kInf;
    for (std::size_t i = 1; i < c.size(); ++i)
      worst = std::max(worst, c[i - 1].value - c[i].value - 3.0 * std::max(c[i].mc_std_err, c[i - 1].mc_std_err));
    s.at_most("curve_monotone", worst, 1e-12, "largest decrease beyond 3 standard errors, 50 levels");
  });

  s.guarded("term_weight_bound", [&] {
    double worst = -kInf;
    const std::vector<std::pair<ModelParams, std::pair<double, double>>> cases = {
        {make(1.0, 1.0, 0.5, 0.0, 0.5), {1.2, 2.0}}, {make(1.0, 2.0, 1.0, 0.0, 1.0), {2.0, 1.0}}};
    for (const auto& [p, uT] : cases) {
      const auto terms = series::sup_cdf_series_terms(uT.first, uT.second, p, s.series_cfg(402));
      for (std::size_t n = 0; n < terms.size(); ++n)
        worst = std::max(worst, terms[n].value - numerics::poisson_pmf(n, p.lambda * uT.second) - 3.0 * terms[n].std_err);
    }
    s.at_most("term_weight_bound", worst, 1e-15, "term minus Poisson weight minus 3 standard errors");
  });

  s.guarded("sandwich_bounds", [&] {
    const std::vector<ModelParams> sets = {make(1.0, 1.0, 0.0, 0.0, 0.0), make(1.0, 2.0, 1.0, 0.0, 1.0),
                                           make(1.0, 0.5, -0.5, 0.5, 0.0)};
    double worst = -kInf;
    std::size_t tag = 0;
    for (const auto& p : sets) {
      const auto levels = linspace(p.fixed_x0() + 0.08, p.fixed_x0() + 4.0, 50);
      auto cfg = s.series_cfg(403);
      cfg.stream_offset = tag++;
      const auto c = series::sup_cdf_curve(levels, 1.0, p, cfg, true);
      for (std::size_t i = 0; i < levels.size(); ++i) {
        const auto [lo, hi] = series::sup_cdf_bounds(levels[i], 1.0, p);
        const double sf = 1.0 - c[i].value;
        const double excess = std::max(lo - sf, sf - hi);
        worst = std::max(worst, excess - 3.0 * c[i].mc_std_err - c[i].truncation_bound);
      }
    }
    s.at_most("sandwich_bounds", worst, 1e-12, "3 parameter sets x 50 levels; excess beyond bounds + 3 se");
  });

  s.guarded("series_vs_exact_ks", [&] {
    const std::vector<ModelParams> sets = {make(1.0, 2.0, 0.0, 0.0, 0.0), make(1.0, 1.0, 1.0, 0.0, 1.0),
                                           make(1.0, 0.5, -0.5, 0.0, 0.0)};
    const auto levels = linspace(0.1, 4.0, 20);
    double worst = 0.0;
    std::uint64_t tag = 0;
    for (const auto& p : sets) {
      const auto mc = montecarlo::estimate_cdf([&](RngStream& r) { return simulate::sample_sup(1.0, p, r); }, levels,
                                               s.budget(100000), s.seed(404 + 10 * tag), s.workers());
      auto cfg = s.series_cfg(405 + 10 * tag);
      const auto c = series::sup_cdf_curve(levels, 1.0, p, cfg, true);
      for (std::size_t i = 0; i < levels.size(); ++i) worst = std::max(worst, std::abs(mc[i].value - c[i].value));
      ++tag;
    }
    s.at_most("series_vs_exact_ks", worst, 0.01, "KS distance on 20 levels, 3 parameter sets");
  });

  s.guarded("mean_fpt_grid_minimizer", [&] {
    auto cfg = tables::mean_fpt_config(1.0);
    cfg.M = s.budget(cfg.M);
    cfg.seed = s.seed(406);
    cfg.workers = s.workers();
    const auto rows = tables::mean_fpt_table(cfg);
    const std::size_t k = tables::series_argmin(rows);
    s.holds("mean_fpt_grid_minimizer", rows[k].lambda == 1.269812,
            "argmin lambda = " + fmt(rows[k].lambda) + " (expected 1.269812)");
  });
}

void asymptotics_suite(Suite& s) {
  s.guarded("window_constant_positive", [&] {
    double smallest = kInf;
    for (double c : linspace(-3.0, 3.0, 25))
      for (double d : linspace(0.1, 5.0, 25)) smallest = std::min(smallest, asymptotics::K_const(c, d));
    s.at_least("window_constant_positive", smallest, std::numeric_limits<double>::min());
  });

  s.guarded("boundary_factor_shape", [&] {
    bool ok = asymptotics::L_func(0.0) == 1.0 && std::abs(asymptotics::L_func(1e-8) - 1.0) < 1e-12;
    for (double y : linspace(-10.0, 0.0, 21)) ok = ok && asymptotics::L_func(y) == 1.0;
    double prev = 1.0;
    for (double y : linspace(0.01, 30.0, 300)) {
      const double l = asymptotics::L_func(y);
      ok = ok && l < prev && l > 0.0;
      prev = l;
    }
    s.holds("boundary_factor_shape", ok, "1 on y <= 0, continuous at 0, strictly decreasing in (0, 1] after");
  });

  s.guarded("joint_case_ordering", [&] {
    bool ok = true;
    for (double l : {0.5, 2.0, 3.0})
      for (double u : {2.0, 3.0, 5.0}) {
        ModelParams p = make(1.0, l, 0.0, 0.0, 1.0);
        p.x0 = InitialCondition::stationary();
        ok = ok && asymptotics::stationary_joint_asym(u, -0.5, 1.0, p).value >=
                       asymptotics::stationary_joint_asym(u, 0.5, 1.0, p).value;
      }
    s.holds("joint_case_ordering", ok, "z < 0 value dominates 0 < z < 1 value");
  });

  auto trend = [&](const std::string& name, const std::vector<double>& us, const std::function<double(double)>& asym,
                   const std::function<std::pair<double, double>(double)>& oracle) {
    s.guarded(name, [&] {
      std::vector<double> ratio, err;
      for (double u : us) {
        const auto [v, e] = oracle(u);
        ratio.push_back(v / asym(u));
        err.push_back(e / v);
      }
      s.at_most(name, trend_violation(ratio, err), 0.0, "oracle/asym at u = " + list(us) + ": " + list(ratio));
    });
  };

  {
    const ModelParams p = make(1.0, 1.0, 0.5, 0.0, 0.0);
    trend(
        "trend_sup_reset_below", {6.0, 8.0, 10.0}, [&](double u) { return asymptotics::sup_tail_asym(u, 1.0, p).value; },
        [&](double u) { return std::pair{series::sup_cdf_bounds(u, 1.0, p).first, 0.0}; });
  }
  {
    const ModelParams p = make(1.0, 2.0, 0.0, 0.0, 1.0);
    trend(
        "trend_sup_reset_above", {16.0, 24.0, 32.0},
        [&](double u) { return asymptotics::sup_tail_asym(u, 1.0, p).value; },
        [&](double u) { return std::pair{asymptotics::sup_tail_single_reset_quadrature(u, 1.0, p), 0.0}; });
  }
  for (const auto& [name, x0, us] :
       {std::tuple{"trend_window_start_below", 0.0, std::vector<double>{5.0, 7.0, 9.0}},
        std::tuple{"trend_window_start_above", 0.5, std::vector<double>{9.0, 12.0, 16.0}}}) {
    const ModelParams p = make(1.0, 1.0, 0.0, x0, 0.5);
    trend(
        name, us, [&](double u) { return asymptotics::inf_window_asym(u, 0.0, 1.0, 0.5, p).value; },
        [&](double u) { return std::pair{analytic::inf_window_exact(1.0, 0.5, u, u, p), 0.0}; });
  }
  {
    ModelParams p = make(1.0, 2.0, 0.0, 0.0, 1.0);
    p.x0 = InitialCondition::stationary();
    const auto cfg = s.series_cfg(501);
    trend(
        "trend_stationary_sup", {2.0, 2.5, 3.0},
        [&](double u) { return asymptotics::stationary_sup_tail_asym(u, 1.0, p).value; },
        [&](double u) {
          const auto r = series::stationary_sup_cdf_series(u, 1.0, p, cfg);
          return std::pair{1.0 - r.value, 3.0 * r.mc_std_err + r.truncation_bound};
        });
  }

  s.guarded("tail_table_ratios", [&] {
    double lo = kInf, hi = -kInf;
    for (double l : {2.0, 3.0}) {
      auto cfg = tables::tail_table_config(l, s.budget(20000) / 20000.0);
      cfg.seed = s.raw_seed();
      cfg.workers = s.workers();
      for (const auto& row : tables::stationary_tail_table(cfg)) {
        lo = std::min(lo, row.ratio);
        hi = std::max(hi, row.ratio);
      }
    }
    s.at_least("tail_table_ratio_min", lo, 0.9, "10 cells, rates 2 and 3");
    s.at_most("tail_table_ratio_max", hi, 1.11, "10 cells, rates 2 and 3");
  });
}

using SuiteFn = void (*)(Suite&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"numerics", numerics_suite}, {"analytic", analytic_suite}, {"simulate", simulate_suite},
      {"montecarlo", montecarlo_suite}, {"series", series_suite}, {"asymptotics", asymptotics_suite}};
  return r;
}

}  // namespace

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

Report run(const Options& opts) {
  if (!(opts.scale > 0.0)) throw ParameterError("validate: scale must be positive");
  if (!(opts.tol_scale > 0.0)) throw ParameterError("validate: tol_scale must be positive");
  for (const auto& want : opts.suites)
    if (std::find(suite_names().begin(), suite_names().end(), want) == suite_names().end())
      throw ParameterError("validate: unknown suite '" + want + "'");
  Report report;
  for (const auto& [name, fn] : registry()) {
    if (!opts.suites.empty() && std::find(opts.suites.begin(), opts.suites.end(), name) == opts.suites.end())
      continue;
    Suite s(opts, report, name);
    fn(s);
  }
  return report;
}

}  // namespace rbm::validate
