#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "zonal/experiment.hpp"

namespace {

const char* describe(const std::string& name) {
  if (name == "integrals") return "closed-form sphere integral table";
  if (name == "berg") return "inversion round-trip error ladder";
  if (name == "firey") return "area-measure acceptance matrix";
  if (name == "weil") return "positivity functional surfaces";
  if (name == "capbound") return "cap concentration ratios";
  if (name == "nonmonotone") return "non-monotone endomorphism pipeline";
  if (name == "lipschitz") return "Lipschitz estimates against variation bounds";
  if (name == "doublecone") return "double-cone separation certificate";
  if (name == "decompose") return "support-function decomposition experiment";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "zonal-lab: deterministic experiments on zonal measures, bodies of "
      "revolution and Minkowski endomorphisms"};
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", zonal::kModuleVersion);

  std::string config_path, out_dir;
  int n = 0, band = 0;
  long long seed = -1;
  bool svg = false;
  app.add_option("--config", config_path,
                 "configuration file (line-oriented key = value sections)");
  app.add_option("--out", out_dir, "output directory for CSV/JSON/SVG");
  app.add_option("--n", n, "dimension of the ambient space");
  app.add_option("--band-limit", band, "zonal band limit");
  app.add_option("--seed", seed, "seed for the deterministic samplers");
  app.add_flag("--svg", svg, "also write SVG plots");

  for (const auto& name : zonal::experiment_names())
    app.add_subcommand(name, describe(name))->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return zonal::exit_usage;
  }

  auto picked = app.get_subcommands();
  if (picked.empty()) {
    std::cerr << app.help();
    return zonal::exit_usage;
  }

  zonal::ExperimentConfig cfg = zonal::ExperimentConfig::defaults();
  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "cannot open config file '" << config_path << "'\n";
      return zonal::exit_usage;
    }
    std::ostringstream text;
    text << in.rdbuf();
    try {
      cfg = zonal::ExperimentConfig::parse(text.str());
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return zonal::exit_usage;
    }
  }
  if (n > 0) cfg.n = n;
  if (band > 0) cfg.band_limit = band;
  if (seed >= 0) cfg.seed = static_cast<unsigned>(seed);
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (svg) cfg.svg = true;

  return zonal::run_experiment(picked.front()->get_name(), cfg);
}
