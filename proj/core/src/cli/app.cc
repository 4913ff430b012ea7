#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cpath/cli/commands.h"
#include "cpath/util/error.h"

namespace cpath::cli {

int Main(int argc, char** argv) {
  CLI::App app{"Conserved-feature discovery and robust retraining for PDF malware classifiers"};
  app.set_version_flag("--version", "cpath 0.1.0");
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out;
  std::optional<uint64_t> seed;
  std::optional<size_t> workers;
  app.add_option("--config", config_path, "Run configuration (JSON)")
      ->envname("CPATH_CONFIG")
      ->required();
  app.add_option("--out", out, "Output directory (overrides output_dir)")->envname("CPATH_OUT");
  app.add_option("--seed", seed, "Random seed (overrides rng_seed)")->envname("CPATH_SEED");
  app.add_option("--workers", workers, "Worker threads (overrides workers)")
      ->envname("CPATH_WORKERS")
      ->check(CLI::PositiveNumber);

  const std::map<std::string, std::string> help = {
      {"extract", "Build feature spaces and per-document vectors"},
      {"conserve", "Run deletion/replacement probing and Forward Elimination"},
      {"map", "Recompute uniform, Hidost and PDFRate-B sets from saved per-seed sets"},
      {"train", "Train the baseline linear model"},
      {"attack", "Attack the baseline model with every configured attack"},
      {"retrain", "Retrain the baseline model against every configured attack"},
      {"evaluate", "Report robustness and ROC/AUC for the baseline and retrained models"},
      {"experiment", "Train, attack, retrain and compare in one run"},
  };
  for (const auto& [name, fn] : Commands()) {
    app.add_subcommand(name, help.at(name))->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Overrides overrides;
    if (out) overrides.output_dir = *out;
    overrides.rng_seed = seed;
    overrides.workers = workers;
    const RunConfig config = LoadRunConfig(config_path, overrides);
    Commands().at(command)(config);
  } catch (const std::exception& e) {
    const int code = ExitCodeFor(e);
    std::fprintf(stderr, "cpath %s: %s\n", command.c_str(), e.what());
    return code;
  }
  return kExitOk;
}

}  // namespace cpath::cli
