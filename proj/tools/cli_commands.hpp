#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rbm/model.hpp"

namespace rbm::cli {

/// Bad flags or values; exit status 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Resolves a named setting from, in order: command-line flag, environment
/// variable RBM_<NAME> (upper case, '-' as '_'), the JSON config file, and
/// the caller's default. Every resolved value is echoed into config().
class Settings {
public:
  Settings(std::map<std::string, std::string> flags, nlohmann::json file);

  std::optional<std::string> raw(const std::string& name) const;
  bool has(const std::string& name) const { return raw(name).has_value(); }

  double number(const std::string& name, double fallback);
  std::uint64_t u64(const std::string& name, std::uint64_t fallback);
  std::size_t count(const std::string& name, std::size_t fallback);
  std::string text(const std::string& name, const std::string& fallback);
  bool flag(const std::string& name);

  /// Model parameters over the given defaults.
  ModelParams model(const ModelParams& defaults);

  const nlohmann::ordered_json& config() const { return echo_; }

private:
  std::map<std::string, std::string> flags_;
  nlohmann::json file_;
  nlohmann::ordered_json echo_;
};

/// Reads a JSON config file; throws UsageError if unreadable or not an object.
nlohmann::json load_config(const std::string& path);

std::string version();

int cmd_simulate(Settings& s);
int cmd_sup_cdf(Settings& s);
int cmd_table1(Settings& s);
int cmd_table2(Settings& s);
int cmd_table3(Settings& s);
int cmd_validate(Settings& s);
int cmd_eval(Settings& s, const std::string& evaluator);

}  // namespace rbm::cli
