#include "cli_commands.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "output.hpp"
#include "rbm/analytic.hpp"
#include "rbm/asymptotics.hpp"
#include "rbm/errors.hpp"
#include "rbm/series.hpp"
#include "rbm/simulate.hpp"
#include "rbm/tables.hpp"
#include "rbm/validate.hpp"

#ifndef RBM_VERSION
#define RBM_VERSION "0.1.0"
#endif

namespace rbm::cli {

using ojson = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240611;

std::string env_name(const std::string& name) {
  std::string e = "RBM_";
  for (char ch : name) e += ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return e;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

double parse_double(const std::string& name, const std::string& v) {
  double x = 0.0;
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc{} || p != end || !std::isfinite(x))
    throw UsageError("--" + name + ": expected a finite number, got '" + v + "'");
  return x;
}

std::uint64_t parse_u64(const std::string& name, const std::string& v) {
  std::uint64_t x = 0;
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc{} || p != end) throw UsageError("--" + name + ": expected a non-negative integer, got '" + v + "'");
  return x;
}

std::vector<double> number_list(const std::string& name, const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(parse_double(name, item));
  if (out.empty()) throw UsageError("--" + name + ": empty list");
  return out;
}

enum class Format { Csv, Json };

Format output_format(Settings& s, Format fallback) {
  const auto f = s.text("format", fallback == Format::Csv ? "csv" : "json");
  if (f == "csv") return Format::Csv;
  if (f == "json") return Format::Json;
  throw UsageError("--format: expected csv or json, got '" + f + "'");
}

ojson document(const Settings& s, const std::string& command) {
  ojson doc;
  doc["version"] = version();
  doc["command"] = command;
  doc["config"] = s.config();
  return doc;
}

void emit_table(Settings& s, const std::string& command, const Table& t, const std::string& default_out = "-") {
  const auto fmt = output_format(s, Format::Csv);
  const auto out = s.text("out", default_out);
  if (fmt == Format::Csv) {
    std::ostringstream os;
    write_csv(os, t);
    write_text(out, os.str());
    return;
  }
  auto doc = document(s, command);
  doc["rows"] = table_rows_json(t);
  write_text(out, doc.dump(2) + "\n");
}

series::SeriesConfig series_config(Settings& s, std::size_t n_max, std::size_t M) {
  series::SeriesConfig cfg;
  cfg.n_max = s.count("n-max", n_max);
  cfg.M = s.count("mc-samples", M);
  cfg.seed = s.u64("seed", kDefaultSeed);
  cfg.workers = s.count("workers", 1);
  try {
    cfg.validate();
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

double positive_scale(Settings& s) {
  const double scale = s.number("scale", 1.0);
  if (!(scale > 0.0)) throw UsageError("--scale must be positive");
  return scale;
}

}  // namespace

std::string version() { return RBM_VERSION; }

Settings::Settings(std::map<std::string, std::string> flags, nlohmann::json file)
    : flags_(std::move(flags)), file_(std::move(file)) {}

std::optional<std::string> Settings::raw(const std::string& name) const {
  if (auto it = flags_.find(name); it != flags_.end()) return it->second;
  if (const char* e = std::getenv(env_name(name).c_str())) return std::string(e);
  if (file_.is_object() && file_.contains(name)) {
    const auto& v = file_.at(name);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_array()) {
      std::string joined;
      for (const auto& item : v) joined += (joined.empty() ? "" : ",") + (item.is_string() ? item.get<std::string>() : item.dump());
      return joined;
    }
    return v.dump();
  }
  return std::nullopt;
}

double Settings::number(const std::string& name, double fallback) {
  const auto r = raw(name);
  const double v = r ? parse_double(name, *r) : fallback;
  echo_[name] = v;
  return v;
}

std::uint64_t Settings::u64(const std::string& name, std::uint64_t fallback) {
  const auto r = raw(name);
  const std::uint64_t v = r ? parse_u64(name, *r) : fallback;
  echo_[name] = v;
  return v;
}

std::size_t Settings::count(const std::string& name, std::size_t fallback) {
  return static_cast<std::size_t>(u64(name, fallback));
}

std::string Settings::text(const std::string& name, const std::string& fallback) {
  const auto v = raw(name).value_or(fallback);
  echo_[name] = v;
  return v;
}

bool Settings::flag(const std::string& name) {
  const auto r = raw(name);
  bool v = false;
  if (r) {
    if (*r == "" || *r == "1" || *r == "true") v = true;
    else if (*r == "0" || *r == "false") v = false;
    else throw UsageError("--" + name + ": expected true or false, got '" + *r + "'");
  }
  echo_[name] = v;
  return v;
}

ModelParams Settings::model(const ModelParams& d) {
  ModelParams p;
  p.sigma = number("sigma", d.sigma);
  p.lambda = number("lambda", d.lambda);
  p.c = number("c", d.c);
  p.xR = number("xr", d.xR);
  // "x0": "stationary" in a config file is accepted as well as the flag.
  const auto x0_raw = raw("x0");
  if (flag("x0-stationary") || (x0_raw && *x0_raw == "stationary")) {
    p.x0 = InitialCondition::stationary();
    echo_["x0"] = "stationary";
  } else {
    p.x0 = InitialCondition::fixed(number("x0", d.x0.is_fixed() ? d.x0.value() : 0.0));
  }
  try {
    p.validate_for_sampling();
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  return p;
}

nlohmann::json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw UsageError("config file '" + path + "' must hold a JSON object");
  return j;
}

int cmd_simulate(Settings& s) {
  ModelParams d;
  d.lambda = 2.0;
  d.c = 1.0;
  d.xR = 1.0;
  const auto p = s.model(d);
  const double T = s.number("T", 3.0);
  const double step = s.number("step", 1e-3);
  const auto seed = s.u64("seed", kDefaultSeed);
  const auto fmt = output_format(s, Format::Csv);
  const auto out = s.text("out", fmt == Format::Csv ? "trajectory.csv" : "-");
  if (!(T > 0.0) || !(step > 0.0) || step > T) throw UsageError("simulate: need T > 0 and 0 < step <= T");

  RngStream rng(seed, 0);
  const auto traj = simulate::sample_path(T, step, p, rng);

  Table path{{"t", "x"}, {}};
  for (std::size_t i = 0; i < traj.times.size(); ++i) path.rows.push_back({traj.times[i], traj.values[i]});
  Table epochs{{"t", "left_limit", "x"}, {}};
  for (std::size_t i = 0; i < traj.reset_epochs.size(); ++i)
    epochs.rows.push_back({traj.reset_epochs[i], traj.left_limits[i], p.xR});

  if (fmt == Format::Json) {
    auto doc = document(s, "simulate");
    doc["path"] = table_rows_json(path);
    doc["resets"] = table_rows_json(epochs);
    write_text(out, doc.dump(2) + "\n");
    return kExitOk;
  }
  if (out == "-" || out.empty()) throw UsageError("simulate: CSV output needs a file path (--out) for the reset sidecar");
  std::string sidecar = out;
  if (sidecar.size() > 4 && sidecar.ends_with(".csv")) sidecar.resize(sidecar.size() - 4);
  sidecar += ".resets.csv";
  std::ostringstream a, b;
  write_csv(a, path);
  write_csv(b, epochs);
  write_text(out, a.str());
  write_text(sidecar, b.str());
  return kExitOk;
}

int cmd_sup_cdf(Settings& s) {
  ModelParams d;
  const auto p = s.model(d);
  std::vector<double> lambdas = {0.1, 0.5, 1.0, 2.0, 3.0, 5.0};
  if (auto l = s.raw("lambdas")) lambdas = number_list("lambdas", s.text("lambdas", ""));
  else if (s.has("lambda")) lambdas = {p.lambda};
  const double T = s.number("T", 1.0);
  const double step = s.number("step", 0.01);
  const double u_min = s.number("u-min", 0.0);
  const double u_max = s.number("u-max", 3.0);
  const bool independent = s.flag("independent");
  if (!(step > 0.0) || !(u_max >= u_min) || !(T > 0.0)) throw UsageError("sup-cdf: invalid grid");
  const auto n_levels = static_cast<std::size_t>(std::floor((u_max - u_min) / step + 1e-9)) + 1;
  if (n_levels > 1000000) throw UsageError("sup-cdf: grid has too many levels");
  std::vector<double> levels(n_levels);
  for (std::size_t i = 0; i < n_levels; ++i) levels[i] = u_min + static_cast<double>(i) * step;
  const auto cfg = series_config(s, 100, 6000);

  Table t{{"lambda", "u", "cdf", "mc_std_err", "truncation_bound"}, {}};
  for (double l : lambdas) {
    ModelParams q = p;
    q.lambda = l;
    if (!(l > 0.0)) throw UsageError("sup-cdf: reset rates must be positive");
    std::vector<series::SeriesResult> curve;
    if (q.x0.is_stationary()) {
      for (std::size_t i = 0; i < levels.size(); ++i) {
        auto c = cfg;
        if (independent) c.stream_offset = derive_stream_id(cfg.stream_offset, i + 1);
        curve.push_back(series::stationary_sup_cdf_series(levels[i], T, q, c));
      }
    } else {
      curve = series::sup_cdf_curve(levels, T, q, cfg, !independent);
    }
    for (std::size_t i = 0; i < levels.size(); ++i)
      t.rows.push_back({l, levels[i], curve[i].value, curve[i].mc_std_err, curve[i].truncation_bound});
  }
  emit_table(s, "sup-cdf", t);
  return kExitOk;
}

int cmd_table1(Settings& s) {
  const double scale = positive_scale(s);
  auto cfg = tables::mean_fpt_config(scale);
  const auto base = series_config(s, cfg.n_max, cfg.M);
  cfg.n_max = base.n_max;
  cfg.M = base.M;
  cfg.seed = base.seed;
  cfg.workers = base.workers;
  const auto rows = tables::mean_fpt_table(cfg);
  Table t{{"lambda", "appr", "appr_std_err", "series_truncation", "tail_survival", "exact", "reference_appr",
           "reference_exact"},
          {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    t.rows.push_back({r.lambda, r.series.estimate.value, r.series.estimate.std_err, r.series.series_truncation,
                      r.series.tail_survival, r.exact, tables::kMeanFptReferenceSeries[i],
                      tables::kMeanFptReferenceExact[i]});
  }
  emit_table(s, "table1", t);
  return kExitOk;
}

namespace {

int tail_table(Settings& s, double lambda, const std::string& command) {
  const double scale = positive_scale(s);
  auto cfg = tables::tail_table_config(lambda, scale);
  cfg.paths = s.count("mc-samples", cfg.paths);
  cfg.step = s.number("step", cfg.step);
  cfg.seed = s.u64("seed", kDefaultSeed);
  cfg.workers = s.count("workers", 1);
  if (cfg.paths < 2 || !(cfg.step > 0.0) || cfg.step > cfg.T || cfg.workers < 1)
    throw UsageError(command + ": need mc-samples >= 2, 0 < step <= 1, workers >= 1");
  const auto rows = tables::stationary_tail_table(cfg);
  const auto& ref = lambda == 3.0 ? tables::kTailReferenceRate3 : tables::kTailReferenceRate2;
  Table t{{"u", "mcm", "half_width", "asym", "ratio", "reference_mcm", "reference_half_width", "reference_ratio"}, {}};
  for (std::size_t i = 0; i < rows.size(); ++i)
    t.rows.push_back({rows[i].u, rows[i].mc.value, rows[i].mc.half_width_95, rows[i].asym, rows[i].ratio, ref[i].mc,
                      ref[i].half_width, ref[i].ratio});
  emit_table(s, command, t);
  return kExitOk;
}

}  // namespace

int cmd_table2(Settings& s) { return tail_table(s, 2.0, "table2"); }
int cmd_table3(Settings& s) { return tail_table(s, 3.0, "table3"); }

int cmd_validate(Settings& s) {
  validate::Options o;
  o.scale = positive_scale(s);
  o.tol_scale = s.number("tol-scale", 1.0);
  if (!(o.tol_scale > 0.0)) throw UsageError("--tol-scale must be positive");
  o.seed = s.u64("seed", kDefaultSeed);
  o.workers = s.count("workers", 1);
  if (o.workers < 1) throw UsageError("--workers must be >= 1");
  o.suites = split_list(s.text("suite", ""));
  for (const auto& name : o.suites)
    if (std::find(validate::suite_names().begin(), validate::suite_names().end(), name) == validate::suite_names().end())
      throw UsageError("unknown suite '" + name + "'");
  if (output_format(s, Format::Json) != Format::Json) throw UsageError("validate: report is JSON only");

  const auto report = validate::run(o);
  auto doc = document(s, "validate");
  auto checks = ojson::array();
  for (const auto& c : report.checks) {
    ojson j;
    j["suite"] = c.suite;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["observed"] = std::isfinite(c.observed) ? ojson(c.observed) : ojson();
    j["threshold"] = c.threshold;
    j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  doc["checks"] = std::move(checks);
  doc["passed"] = report.passed();
  write_text(s.text("out", "-"), doc.dump(2) + "\n");
  for (const auto& c : report.checks)
    if (!c.passed) std::cerr << "FAIL " << c.suite << "/" << c.name << " observed " << format_number(c.observed) << " threshold " << format_number(c.threshold) << "\n";
  return report.passed() ? kExitOk : kExitFailure;
}

namespace {

using Fields = std::vector<std::pair<std::string, double>>;
using Evaluator = std::function<Fields(Settings&)>;

ModelParams fixed_model(Settings& s) {
  auto p = s.model(ModelParams{});
  p.validate();
  return p;
}

const std::map<std::string, Evaluator>& evaluators() {
  static const std::map<std::string, Evaluator> table = {
      {"cdf",
       [](Settings& s) {
         auto p = fixed_model(s);
         const double u = s.number("u", 1.0), T = s.number("T", 1.0);
         const auto cfg = series_config(s, 60, 5000);
         const auto r = p.x0.is_stationary() ? series::stationary_sup_cdf_series(u, T, p, cfg)
                                             : series::sup_cdf_series(u, T, p, cfg);
         return Fields{{"value", r.value}, {"mc_std_err", r.mc_std_err}, {"truncation_bound", r.truncation_bound}};
       }},
      {"sup-bounds",
       [](Settings& s) {
         auto p = fixed_model(s);
         const auto [lo, hi] = series::sup_cdf_bounds(s.number("u", 1.0), s.number("T", 1.0), p);
         return Fields{{"lower", lo}, {"upper", hi}};
       }},
      {"one-dim-cdf",
       [](Settings& s) {
         auto p = fixed_model(s);
         return Fields{{"value", analytic::reset_cdf_1d(s.number("u", 0.0), s.number("T", 1.0), p)}};
       }},
      {"joint-cdf",
       [](Settings& s) {
         auto p = fixed_model(s);
         const double u = s.number("u", 0.0), w = s.number("w", 0.0);
         if (p.x0.is_stationary())
           return Fields{{"value", analytic::stationary_joint_cdf(s.number("delta", 0.5), u, w, p)}};
         return Fields{{"value", analytic::joint_cdf(s.number("s", 0.5), s.number("t", 1.0), u, w, p)}};
       }},
      {"joint-density",
       [](Settings& s) {
         auto p = fixed_model(s);
         return Fields{{"value", analytic::joint_density(s.number("s", 0.5), s.number("t", 1.0), s.number("u", 0.0),
                                                         s.number("w", 0.0), p)}};
       }},
      {"stationary",
       [](Settings& s) {
         auto p = fixed_model(s);
         const double u = s.number("u", 0.0);
         return Fields{{"cdf", analytic::stationary_cdf(u, p)},
                       {"sf", analytic::stationary_sf(u, p)},
                       {"pdf", analytic::stationary_pdf(u, p)},
                       {"mean", analytic::stationary_mean(p)},
                       {"variance", analytic::stationary_variance(p)}};
       }},
      {"alpha",
       [](Settings& s) {
         auto p = fixed_model(s);
         const auto a = analytic::alpha_param(p);
         return Fields{{"value", a.alpha}, {"prefactor", a.prefactor}};
       }},
      {"sup-tail-asym",
       [](Settings& s) {
         auto p = fixed_model(s);
         return Fields{{"value", asymptotics::sup_tail_asym(s.number("u", 5.0), s.number("T", 1.0), p).value}};
       }},
      {"sup-tail-quadrature",
       [](Settings& s) {
         auto p = fixed_model(s);
         return Fields{
             {"value", asymptotics::sup_tail_single_reset_quadrature(s.number("u", 8.0), s.number("T", 1.0), p)}};
       }},
      {"inf-window-exact",
       [](Settings& s) {
         auto p = fixed_model(s);
         const double u = s.number("u", 1.2);
         return Fields{{"value", analytic::inf_window_exact(s.number("T", 1.0), s.number("delta", 0.5), u,
                                                            s.number("v", u), p)}};
       }},
      {"inf-window-asym",
       [](Settings& s) {
         auto p = fixed_model(s);
         const double u = s.number("u", 7.0), r = s.number("r", 0.0), T = s.number("T", 1.0);
         const auto a = asymptotics::inf_window_asym(u, r, T, s.number("delta", 0.5), p);
         return Fields{{"value", a.value}, {"v", asymptotics::inf_window_level(u, r, T, p)}};
       }},
      {"window-constant",
       [](Settings& s) {
         return Fields{{"value", asymptotics::K_const(s.number("c", 0.0), s.number("delta", 0.5))}};
       }},
      {"boundary-factor", [](Settings& s) { return Fields{{"value", asymptotics::L_func(s.number("y", 0.0))}}; }},
      {"stationary-sup-asym",
       [](Settings& s) {
         auto p = fixed_model(s);
         return Fields{
             {"value", asymptotics::stationary_sup_tail_asym(s.number("u", 2.5), s.number("T", 1.0), p).value}};
       }},
      {"stationary-joint-asym",
       [](Settings& s) {
         auto p = fixed_model(s);
         return Fields{{"value", asymptotics::stationary_joint_asym(s.number("u", 3.0), s.number("z", 0.5),
                                                                    s.number("T", 1.0), p)
                                     .value}};
       }},
      {"stationary-joint-bracket",
       [](Settings& s) {
         auto p = fixed_model(s);
         const auto [lo, hi] = asymptotics::stationary_joint_zero_bracket(s.number("u", 3.0), s.number("T", 1.0), p);
         return Fields{{"lower", lo}, {"upper", hi}};
       }},
      {"mean-fpt-exact",
       [](Settings& s) {
         auto p = fixed_model(s);
         return Fields{{"value", series::mean_fpt_exact(s.number("u", 1.0), p)}};
       }},
      {"mean-fpt-series",
       [](Settings& s) {
         auto p = fixed_model(s);
         auto cfg = series_config(s, 60, 5000);
         cfg.T_max = s.number("T", cfg.T_max);
         cfg.grid_step = s.number("step", cfg.grid_step);
         const auto r = series::mean_fpt_series(s.number("u", 1.0), p, cfg);
         return Fields{{"value", r.estimate.value},
                       {"std_err", r.estimate.std_err},
                       {"series_truncation", r.series_truncation},
                       {"tail_survival", r.tail_survival}};
       }},
      {"optimize-lambda",
       [](Settings& s) {
         const auto [l, m] = series::optimal_lambda(s.number("u", 1.0), s.number("sigma", 1.0));
         return Fields{{"value", l}, {"mean_fpt", m}};
       }},
  };
  return table;
}

}  // namespace

int cmd_eval(Settings& s, const std::string& name) {
  const auto& table = evaluators();
  const auto it = table.find(name);
  if (it == table.end()) {
    std::string names;
    for (const auto& [k, v] : table) names += (names.empty() ? "" : ", ") + k;
    throw UsageError("unknown evaluator '" + name + "'; available: " + names);
  }
  const auto fields = it->second(s);
  // Plain key=value lines unless JSON is asked for.
  const auto fmt = s.text("format", "text");
  if (fmt != "text" && fmt != "json") throw UsageError("eval: --format must be text or json");
  std::ostringstream os;
  if (fmt == "json") {
    auto doc = document(s, "eval");
    doc["evaluator"] = name;
    for (const auto& [k, v] : fields) doc[k] = v;
    os << doc.dump(2) << "\n";
  } else {
    os << "evaluator=" << name << "\n";
    for (const auto& [k, v] : fields) os << k << "=" << format_number(v) << "\n";
  }
  write_text(s.text("out", "-"), os.str());
  return kExitOk;
}

}  // namespace rbm::cli
