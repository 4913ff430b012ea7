#ifndef CPATH_CLI_COMMANDS_H_
#define CPATH_CLI_COMMANDS_H_

#include <exception>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cpath/cli/config.h"
#include "cpath/learn/model.h"
#include "cpath/oracle/cached_oracle.h"
#include "cpath/oracle/oracle.h"
#include "cpath/pdf/graph.h"

namespace cpath::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitOracle = 3,
  kExitData = 4,
};

// Exit status for an exception escaping a command.
int ExitCodeFor(const std::exception& e);

struct Document {
  std::string id;  // file name relative to the corpus directory
  pdf::ObjectGraph graph;
};

// Loads every *.pdf and *.json file under `path` (or the single file it
// names) in sorted order. Errors name the offending file. Throws
// Error{kConfig} when nothing is found.
std::vector<Document> LoadCorpus(const std::filesystem::path& path);

struct OracleHandle {
  std::shared_ptr<oracle::Oracle> oracle;
  std::shared_ptr<oracle::CachedOracle> cache;  // set for cache oracles
};

OracleHandle MakeOracle(const OracleSpec& spec);

struct Dataset {
  features::SpacePtr space;
  std::vector<learn::LabeledVector> train;
  std::vector<learn::LabeledVector> test;
  std::set<std::string> marked;  // synthetic data sets only
};

Dataset LoadDataset(const RunConfig& config);

// Each command reads its inputs from the config and writes reports under
// config.output_dir. They throw on failure; see ExitCodeFor.
void CmdExtract(const RunConfig& config);
void CmdConserve(const RunConfig& config);
void CmdMap(const RunConfig& config);
void CmdTrain(const RunConfig& config);
void CmdAttack(const RunConfig& config);
void CmdRetrain(const RunConfig& config);
void CmdEvaluate(const RunConfig& config);
void CmdExperiment(const RunConfig& config);

using CommandFn = void (*)(const RunConfig&);
const std::map<std::string, CommandFn>& Commands();

// Entry point of the command-line tool.
int Main(int argc, char** argv);

}  // namespace cpath::cli

#endif  // CPATH_CLI_COMMANDS_H_
