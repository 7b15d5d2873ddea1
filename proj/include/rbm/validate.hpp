#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Cross-oracle invariant suites: every evaluator is checked against an
// independent route to the same quantity (exact sampler, Monte Carlo,
// closed forms, bounds).

namespace rbm::validate {

struct Check {
  std::string suite;
  std::string name;
  bool passed = false;
  double observed = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct Options {
  double scale = 1.0;      ///< multiplies every sample budget
  double tol_scale = 1.0;  ///< multiplies every deviation tolerance
  std::uint64_t seed = 20240611;
  std::size_t workers = 1;
  std::vector<std::string> suites;  ///< empty: all
};

struct Report {
  std::vector<Check> checks;
  bool passed() const;
};

/// Suite names in run order.
const std::vector<std::string>& suite_names();

Report run(const Options& opts);

}  // namespace rbm::validate
