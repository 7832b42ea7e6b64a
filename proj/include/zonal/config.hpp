#pragma once

#include <string>
#include <vector>

namespace zonal {

// Double formatted with 17 significant digits: enough to round-trip exactly,
// and the fixed width keeps repeated runs byte-identical.
std::string format17(double x);

// Settings shared by every experiment. The text form is line-oriented
// `key = value` grouped in sections; it re-parses to an identical struct and
// re-serializes to identical bytes.
struct ExperimentConfig {
  int n = 3;
  int band_limit = 96;
  unsigned seed = 1;
  std::string out_dir = "out";
  bool svg = false;

  std::vector<double> alpha_grid;
  std::vector<double> beta_grid;
  std::vector<double> eps_grid;

  double tol_identity = 1e-8;
  double tol_margin = 1e-6;

  int bodies = 20;
  int trials = 200;

  // Grids filled with the clustered defaults used throughout the experiments.
  static ExperimentConfig defaults();

  // Throws std::invalid_argument on unknown keys, malformed lines or values.
  static ExperimentConfig parse(const std::string& text);

  std::string serialize() const;

  // Throws std::invalid_argument when an invariant fails (empty grids,
  // nonpositive tolerances, out-of-range dimensions...).
  void validate() const;

  // FNV-1a over the serialized form, as 16 hex digits. Only the mathematical
  // inputs contribute: out_dir and the svg toggle are masked first.
  std::string hash() const;
};

}  // namespace zonal
