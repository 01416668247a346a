#pragma once

// Command-line front end. Every subcommand resolves its flags into an
// ExperimentConfig, runs, and emits a JSON or CSV report that embeds the
// resolved config and the tool version.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace chargedef::cli {

enum ExitCode : int {
  kOk = 0,
  kBadConfig = 1,
  kNotStabilized = 2,
  kNotFredholm = 3,
  kFailed = 4,  // computation failed or verification mismatch
};

struct ExperimentConfig {
  std::string subcommand;
  int n = 1;
  std::vector<int> level;  // particular level; empty means zero
  int full_level = -1;     // >= 0 selects the full level ℓ
  std::string symbol = "coordinate:1";
  int D = 20;
  int K = 4;
  std::vector<int> d_values{5, 10, 20};
  int coordinate = 1;
  int degree_cap = 200;
  int power = 0;  // Fedosov power; 0 means n + 1
  int theta_nodes = 64;
  int phi_nodes = 128;
  int samples = 10;
  double rank_tol = 1e-8;
  std::string output;
  std::string format = "json";

  nlohmann::json to_json() const;
};

std::string version();

/// Runs the tool with argv[1..] in `args`. Reports go to --output (written
/// atomically) or to `out`; diagnostics and error JSON go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chargedef::cli
