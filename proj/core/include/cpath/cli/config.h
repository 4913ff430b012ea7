#ifndef CPATH_CLI_CONFIG_H_
#define CPATH_CLI_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cpath/conserve/rational.h"
#include "cpath/features/space.h"
#include "cpath/learn/attack.h"
#include "cpath/learn/retrain.h"
#include "cpath/learn/sweep.h"
#include "cpath/learn/train.h"

namespace cpath::cli {

struct OracleSpec {
  std::string kind = "rule";  // rule | command | cache
  std::filesystem::path rules;  // rule
  std::string program;          // command
  int64_t timeout_ms = 60000;
  size_t max_parallelism = 1;
  std::filesystem::path store;  // cache
  bool strict = true;
  std::shared_ptr<OracleSpec> fallback;
};

// Where an attack's frozen features come from.
enum class FrozenSource { kNone, kConserved, kList };

struct AttackSpec {
  std::string name;
  learn::AttackConfig config;  // frozen filled in when the data set is known
  FrozenSource frozen_source = FrozenSource::kNone;
  std::set<std::string> frozen_list;
};

struct DatasetSpec {
  std::string synthetic;  // "evasion_toy" | "signal" | empty for files
  uint64_t seed = 0;
  size_t per_class = 200;
  size_t num_features = 10;
  size_t signal = 3;
  features::SpaceKind kind = features::SpaceKind::kSL2013;
  std::filesystem::path space;
  std::filesystem::path train;
  std::filesystem::path test;
};

struct SweepSpec {
  std::vector<double> grid;
  std::optional<size_t> match_count;
  bool cover_conserved = false;
  std::set<std::string> cover;
  double threshold = 1e-6;
};

// A parsed run configuration. Relative paths are resolved against the
// directory holding the config file.
struct RunConfig {
  std::filesystem::path base_dir;

  std::filesystem::path seeds;   // directory of malicious seed documents
  std::filesystem::path donors;  // benign donor document or directory
  std::filesystem::path clean;   // directory of benign documents
  OracleSpec oracle;

  size_t depth_limit = 10;
  conserve::Rational beta;
  features::SpaceParams space_params;
  std::vector<features::SpaceKind> spaces;
  std::filesystem::path conserved_sets;  // input for `map`; default <out>/conserved_sets.jsonl

  std::optional<DatasetSpec> dataset;
  learn::TrainOptions train;
  std::vector<AttackSpec> attacks;
  learn::RetrainConfig retrain;
  size_t attack_samples = 100;
  std::optional<SweepSpec> sweep;
  std::filesystem::path conserved;  // uniform report whose S is the conserved set
  std::filesystem::path model;      // model file for attack/retrain/evaluate

  std::filesystem::path output_dir;
  uint64_t rng_seed = 0;
  size_t workers = 1;

  // JSON text of the configuration with every default filled in, paths as
  // written in the file.
  std::string materialized;
};

struct Overrides {
  std::optional<std::filesystem::path> output_dir;
  std::optional<uint64_t> rng_seed;
  std::optional<size_t> workers;
};

// Throws Error{kConfig} for unreadable or invalid configs, unknown keys and
// referenced input paths that do not exist.
RunConfig LoadRunConfig(const std::filesystem::path& path, const Overrides& overrides = {});
RunConfig ParseRunConfig(std::string_view json_text, const std::filesystem::path& base_dir,
                         const Overrides& overrides = {});

}  // namespace cpath::cli

#endif  // CPATH_CLI_CONFIG_H_
