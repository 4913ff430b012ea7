// Writes the fixture corpus, rules and example run configurations.
#include <cstdio>
#include <filesystem>
#include <string>

#include "cpath/pdf/json_io.h"
#include "cpath/pdf/writer.h"
#include "cpath/util/files.h"
#include "fixtures/fixtures.h"

namespace {

constexpr char kFixtureRun[] = R"({
  "rng_seed": 1,
  "workers": 4,
  "output_dir": "out/fixture_run",
  "corpus": {
    "seeds": "corpus/malicious",
    "donors": "donor",
    "clean": "corpus/clean"
  },
  "oracle": {"kind": "rule", "rules": "rules.json"},
  "pipeline": {"depth_limit": 10, "beta": 3}
}
)";

constexpr char kToyExperiment[] = R"({
  "rng_seed": 1,
  "workers": 4,
  "output_dir": "out/toy_experiment",
  "learning": {
    "dataset": {"synthetic": "evasion_toy", "seed": 7, "per_class": 200},
    "train": {"reg": {"kind": "l2", "C": 1.0}, "epochs": 300},
    "attacks": [
      {"name": "cg", "kind": "coordinate_greedy", "lambda": 0.005, "max_sweeps": 5, "restarts": 8},
      {"name": "cg_conserved", "kind": "coordinate_greedy", "lambda": 0.005, "max_sweeps": 5,
       "restarts": 8, "frozen": "conserved"},
      {"name": "sp", "kind": "salt_pepper", "epsilon": 1000}
    ],
    "retrain": {"max_iterations": 5, "stop_when_no_new": true},
    "attack_samples": 100
  }
}
)";

constexpr char kSignalSweep[] = R"({
  "rng_seed": 1,
  "output_dir": "out/signal_sweep",
  "learning": {
    "dataset": {"synthetic": "signal", "seed": 11, "per_class": 200, "num_features": 10, "signal": 3},
    "attacks": [],
    "retrain": {"max_iterations": 0},
    "l1_sweep": {
      "grid": [0.002, 0.004, 0.008, 0.016, 0.032, 0.064, 0.128, 0.256, 0.512, 1.024],
      "cover": "conserved"
    }
  }
}
)";

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <output-dir>\n", argv[0]);
    return 2;
  }
  namespace fs = std::filesystem;
  using namespace cpath;
  const fs::path out = argv[1];
  for (const auto& doc : fixtures::MaliciousCorpus()) {
    WriteFile(out / "corpus/malicious" / (doc.id + ".pdf"), pdf::SerializePdf(doc.graph));
  }
  for (const auto& doc : fixtures::CleanCorpus()) {
    WriteFile(out / "corpus/clean" / (doc.id + ".pdf"), pdf::SerializePdf(doc.graph));
  }
  WriteFile(out / "donor/benign_donor.pdf", pdf::SerializePdf(fixtures::BenignDonor()));
  WriteFile(out / "json/openaction.json", pdf::SerializeGraphJson(fixtures::OpenActionDocument()));
  WriteFile(out / "rules.json", fixtures::SignatureRulesJson());
  WriteFile(out / "fixture_run.json", kFixtureRun);
  WriteFile(out / "toy_experiment.json", kToyExperiment);
  WriteFile(out / "signal_sweep.json", kSignalSweep);
  return 0;
}
