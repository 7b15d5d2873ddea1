#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli_commands.hpp"
#include "rbm/errors.hpp"

namespace {

using rbm::cli::Settings;

struct OptionDef {
  const char* name;
  const char* help;
  bool is_flag = false;
};

const std::vector<OptionDef> kModelOptions = {
    {"sigma", "diffusion scale (> 0)"},
    {"lambda", "reset rate (> 0; 0 allowed for simulate)"},
    {"c", "drift magnitude; the process drifts at -c"},
    {"x0", "fixed starting level"},
    {"x0-stationary", "start from the stationary law", true},
    {"xr", "reset level"},
};

const std::vector<OptionDef> kRunOptions = {
    {"seed", "64-bit seed"},
    {"workers", "worker threads"},
    {"out", "output path ('-' for stdout)"},
    {"format", "csv or json"},
    {"config", "JSON config file; flags and RBM_* environment variables override it"},
};

struct Command {
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;
};

void add_options(Command& cmd, const std::vector<OptionDef>& defs) {
  for (const auto& sp : defs) {
    const std::string name = sp.name;
    auto& store = cmd.values;
    if (sp.is_flag)
      cmd.app->add_flag_callback("--" + name, [&store, name] { store[name] = "true"; }, sp.help);
    else
      cmd.app->add_option_function<std::string>(
          "--" + name, [&store, name](const std::string& v) { store[name] = v; }, sp.help);
  }
}

Command& make(CLI::App& app, std::map<std::string, Command>& cmds, const std::string& name, const std::string& help,
              std::vector<std::vector<OptionDef>> groups) {
  auto& cmd = cmds[name];
  cmd.app = app.add_subcommand(name, help);
  for (const auto& g : groups) add_options(cmd, g);
  return cmd;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Brownian motion with drift and Poisson resetting: exact laws, series, simulation and asymptotics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rbm::cli::version());

  std::map<std::string, Command> cmds;
  make(app, cmds, "simulate", "write one trajectory (t, x) and a reset sidecar", {kModelOptions, kRunOptions,
       {{"T", "horizon"}, {"step", "grid step"}}});
  make(app, cmds, "sup-cdf", "series CDF of the running supremum over a level grid, per reset rate",
       {kModelOptions, kRunOptions,
        {{"T", "horizon"},
         {"step", "level grid step"},
         {"u-min", "first level"},
         {"u-max", "last level"},
         {"lambdas", "comma-separated reset rates"},
         {"n-max", "highest reset count"},
         {"mc-samples", "simplex draws per term"},
         {"independent", "fresh draws per level instead of shared ones", true}}});
  make(app, cmds, "table1", "mean first-passage time: series estimate and closed form over the rate grid",
       {kRunOptions, {{"scale", "multiply the simplex draw budget"}, {"n-max", "highest reset count"},
                      {"mc-samples", "simplex draws per term"}}});
  for (const char* name : {"table2", "table3"})
    make(app, cmds, name,
         std::string("stationary supremum exceedance: Monte Carlo vs tail approximation, rate ") +
             (name[5] == '2' ? "2" : "3"),
         {kRunOptions, {{"scale", "multiply the path budget"}, {"mc-samples", "paths"}, {"step", "path grid step"}}});
  auto& val = make(app, cmds, "validate", "run the invariant suites and write a JSON report",
                   {kRunOptions, {{"scale", "multiply every sample budget"},
                                  {"tol-scale", "multiply every deviation tolerance"}}});
  std::vector<std::string> suites;
  val.app->add_option("--suite", suites, "restrict to these suites (repeatable)");

  auto& ev = make(app, cmds, "eval", "evaluate one quantity by name",
                  {kModelOptions, kRunOptions,
                   {{"T", "horizon"},
                    {"u", "level"},
                    {"z", "level ratio of the terminal value"},
                    {"s", "first time"},
                    {"t", "second time"},
                    {"w", "second level"},
                    {"v", "level of the starting value of the window"},
                    {"delta", "window length or time lag"},
                    {"r", "offset of the window level"},
                    {"y", "argument of the boundary factor"},
                    {"step", "grid step"},
                    {"n-max", "highest reset count"},
                    {"mc-samples", "simplex draws per term"}}});
  std::string evaluator;
  ev.app->add_option("name", evaluator, "evaluator name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return rbm::cli::kExitUsage;
  }

  try {
    for (auto& [name, cmd] : cmds) {
      if (!cmd.app->parsed()) continue;
      if (!suites.empty()) {
        std::string joined;
        for (const auto& s : suites) joined += (joined.empty() ? "" : ",") + s;
        cmd.values["suite"] = joined;
      }
      nlohmann::json file = nlohmann::json::object();
      Settings probe(cmd.values, file);
      if (auto path = probe.raw("config")) file = rbm::cli::load_config(*path);
      Settings settings(cmd.values, file);
      if (name == "simulate") return rbm::cli::cmd_simulate(settings);
      if (name == "sup-cdf") return rbm::cli::cmd_sup_cdf(settings);
      if (name == "table1") return rbm::cli::cmd_table1(settings);
      if (name == "table2") return rbm::cli::cmd_table2(settings);
      if (name == "table3") return rbm::cli::cmd_table3(settings);
      if (name == "validate") return rbm::cli::cmd_validate(settings);
      if (name == "eval") return rbm::cli::cmd_eval(settings, evaluator);
    }
  } catch (const rbm::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return rbm::cli::kExitUsage;
  } catch (const std::invalid_argument& e) {
    // ParameterError and friends: the inputs were out of range.
    std::cerr << "usage error: " << e.what() << "\n";
    return rbm::cli::kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return rbm::cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rbm::cli::kExitFailure;
  }
  return rbm::cli::kExitUsage;
}
