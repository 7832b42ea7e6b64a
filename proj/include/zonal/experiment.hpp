#pragma once

#include <string>
#include <vector>

#include "zonal/config.hpp"

namespace zonal {

inline constexpr const char* kModuleVersion = "1.0.0";

// Process exit codes shared by the runner and the command-line tool.
enum ExperimentExit : int {
  exit_ok = 0,            // experiment ran and its checks passed
  exit_violation = 1,     // a mathematical check failed
  exit_usage = 2,         // bad command or configuration
  exit_inconclusive = 3,  // numerics could not certify either way
};

std::vector<std::string> experiment_names();

// Runs one named experiment with the given configuration and writes
// <out_dir>/<name>.csv, <out_dir>/<name>.json and, when cfg.svg is set,
// <out_dir>/<name>.svg. Returns an ExperimentExit value; never throws.
int run_experiment(const std::string& command, const ExperimentConfig& cfg);

}  // namespace zonal
