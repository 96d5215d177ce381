#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlslab/families.hpp"
#include "nlslab/lab.hpp"
#include "nlslab/picard.hpp"

namespace nlslab {

/// Configuration errors name the offending key; the CLI maps them to
/// exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fully validated run configuration. Unknown keys anywhere in the input
/// are rejected.
struct ExperimentConfig {
  std::string out_root = "runs";
  std::string label;
  std::uint64_t seed = 20240901;

  int dim = 1;
  int points_per_dim = 1024;
  double box_length = 40.0;

  TestFamily data = Gaussian{};

  picard::SolverConfig solver;

  VerifyConfig verify;
  std::vector<EstimateId> only;

  struct Sweep {
    std::string command = "solve";  // "solve" or "verify"
    // axis -> values; axes are dotted config paths, e.g. "solver.p".
    std::map<std::string, std::vector<nlohmann::json>> axes;
  } sweep;

  int jobs = 1;

  nlohmann::json effective;  // normalized JSON actually used (for hashing)
};

/// Built-in defaults as JSON (single source mirrored by configs/default.json).
nlohmann::json default_experiment_json();

/// Parses and validates; throws ConfigError naming the offending key.
ExperimentConfig parse_experiment_config(const nlohmann::json& j);

/// Applies a dotted-path override ("solver.p=1.25"); the value is parsed
/// as JSON when possible and as a string otherwise.
void apply_override(nlohmann::json& j, const std::string& assignment);

/// FNV-1a 64 of the canonical dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& j);

}  // namespace nlslab
