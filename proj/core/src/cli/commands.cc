#include "cpath/cli/commands.h"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "cpath/conserve/elimination.h"
#include "cpath/conserve/mapping.h"
#include "cpath/conserve/passes.h"
#include "cpath/features/extract.h"
#include "cpath/features/space.h"
#include "cpath/learn/attack.h"
#include "cpath/learn/metrics.h"
#include "cpath/learn/retrain.h"
#include "cpath/learn/sweep.h"
#include "cpath/learn/synthetic.h"
#include "cpath/learn/train.h"
#include "cpath/oracle/command_oracle.h"
#include "cpath/oracle/rule_oracle.h"
#include "cpath/pdf/json_io.h"
#include "cpath/pdf/parser.h"
#include "cpath/util/error.h"
#include "cpath/util/files.h"
#include "json.hpp"

namespace cpath::cli {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

void Log(const std::string& line) { std::fprintf(stderr, "cpath: %s\n", line.c_str()); }

void Emit(const RunConfig& config, const std::string& name, const std::string& text) {
  WriteFile(config.output_dir / name, text);
  Log("wrote " + (config.output_dir / name).string());
}

void EmitJson(const RunConfig& config, const std::string& name, const ordered_json& doc) {
  Emit(config, name, doc.dump(2) + "\n");
}

ordered_json ConfigJson(const RunConfig& config) {
  return ordered_json::parse(config.materialized);
}

std::vector<conserve::SeedRecord> ToSeeds(std::vector<Document> docs) {
  std::vector<conserve::SeedRecord> seeds;
  seeds.reserve(docs.size());
  for (auto& d : docs) seeds.push_back({d.id, std::move(d.graph), oracle::Outcome::kMalicious});
  return seeds;
}

ordered_json UniformJson(const conserve::UniformResult& u) {
  return ordered_json::parse(conserve::UniformResultToJson(u));
}

ordered_json SetsJson(const conserve::ConservedSets& s) {
  return ordered_json::parse(conserve::ToJsonLine(s));
}

// Writes uniform.json, hidost.json and pdfrate_b.json.
void EmitMappings(const RunConfig& config, const std::vector<conserve::SeedRecord>& seeds,
                  const std::vector<conserve::ConservedSets>& per_seed) {
  const auto uniform = conserve::ForwardElimination(per_seed, config.beta);
  Emit(config, "uniform.json", conserve::UniformResultToJson(uniform));

  const auto hidost = conserve::MapToHidost(uniform, config.space_params.rules);
  ordered_json h;
  h["S"] = hidost.features;
  h["rewritten"] = hidost.rewritten;
  ordered_json collisions = ordered_json::object();
  for (const auto& [image, from] : hidost.collisions) collisions[image] = from;
  h["collisions"] = collisions;
  ordered_json rules = ordered_json::array();
  for (const auto& rule : config.space_params.rules) rules.push_back(rule.ToString());
  h["rules"] = rules;
  EmitJson(config, "hidost.json", h);

  const auto pdfrate = conserve::MapToPdfRateB(seeds, per_seed, config.space_params.count_defs,
                                               config.beta, config.depth_limit);
  ordered_json p;
  p["o_side_convention"] =
      "O holds count features turned off by deleting a non-conserved path and by no conserved "
      "path; D is empty";
  ordered_json rows = ordered_json::array();
  for (const auto& s : pdfrate.per_seed) rows.push_back(SetsJson(s));
  p["per_seed"] = rows;
  p["uniform"] = UniformJson(pdfrate.uniform);
  EmitJson(config, "pdfrate_b.json", p);

  // One row per conserved feature and classifier.
  ordered_json table = ordered_json::array();
  auto add_rows = [&table](const char* classifier, const conserve::FeatureSet& names) {
    for (const auto& name : names) {
      table.push_back({{"classifier", classifier},
                       {"feature", name},
                       {"involves_js", conserve::InvolvesJavaScript(name)}});
    }
  };
  add_rows("sl2013", uniform.S);
  add_rows("hidost", hidost.features);
  add_rows("pdfrate_b", pdfrate.uniform.S);
  EmitJson(config, "conserved_table.json", table);
}

void RequireDir(const fs::path& path, const char* what) {
  if (path.empty()) throw Error(ErrorCode::kConfig, std::string("config needs corpus.") + what);
}

features::FeatureVector ParseBits(const std::string& bits, const features::SpacePtr& space,
                                  const std::string& where) {
  if (bits.size() != space->size()) {
    throw Error(ErrorCode::kSpaceMismatch, where + ": bit string has " + std::to_string(bits.size()) +
                                               " entries, space has " + std::to_string(space->size()));
  }
  std::vector<uint8_t> v(bits.size());
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') {
      throw Error(ErrorCode::kSchemaViolation, where + ": bits must be 0 or 1");
    }
    v[i] = bits[i] == '1';
  }
  return features::FeatureVector(space, std::move(v));
}

std::vector<learn::LabeledVector> LoadVectors(const fs::path& path, const features::SpacePtr& space) {
  const std::string text = ReadFile(path);
  std::vector<learn::LabeledVector> out;
  size_t line_no = 0;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    const std::string line = text.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.filename().string() + ":" + std::to_string(line_no);
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kSchemaViolation, where + ": " + e.what());
    }
    if (!rec.is_object() || !rec.contains("label") || !rec.contains("bits") ||
        !rec["label"].is_string() || !rec["bits"].is_string()) {
      throw Error(ErrorCode::kSchemaViolation, where + ": needs label and bits strings");
    }
    const std::string label = rec["label"].get<std::string>();
    if (label != "malicious" && label != "benign") {
      throw Error(ErrorCode::kSchemaViolation, where + ": label must be malicious or benign");
    }
    out.push_back({ParseBits(rec["bits"].get<std::string>(), space, where), label == "malicious"});
  }
  return out;
}

std::set<std::string> ConservedSet(const RunConfig& config, const Dataset& data) {
  if (!config.dataset->synthetic.empty()) return data.marked;
  if (config.conserved.empty()) {
    throw Error(ErrorCode::kConfig, "frozen \"conserved\" needs learning.conserved (a uniform report)");
  }
  if (!fs::exists(config.conserved)) {
    throw Error(ErrorCode::kConfig, "learning.conserved " + config.conserved.string() + " does not exist");
  }
  json doc;
  try {
    doc = json::parse(ReadFile(config.conserved));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchemaViolation, config.conserved.filename().string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("S") || !doc["S"].is_array()) {
    throw Error(ErrorCode::kSchemaViolation, config.conserved.filename().string() + ": needs an S array");
  }
  std::set<std::string> s;
  for (const auto& f : doc["S"]) s.insert(f.get<std::string>());
  return s;
}

struct PreparedAttack {
  const AttackSpec* spec;
  learn::AttackConfig config;
  std::set<std::string> ignored;  // frozen names outside the space
};

std::vector<PreparedAttack> PrepareAttacks(const RunConfig& config, const Dataset& data) {
  std::vector<PreparedAttack> out;
  for (const auto& spec : config.attacks) {
    PreparedAttack p{&spec, spec.config, {}};
    std::set<std::string> wanted;
    if (spec.frozen_source == FrozenSource::kConserved) wanted = ConservedSet(config, data);
    if (spec.frozen_source == FrozenSource::kList) wanted = spec.frozen_list;
    for (const auto& name : wanted) {
      (data.space->IndexOf(name) ? p.config.frozen : p.ignored).insert(name);
    }
    out.push_back(std::move(p));
  }
  return out;
}

// Malicious test vectors the model detects, at most attack_samples of them.
std::vector<features::FeatureVector> AttackTargets(const RunConfig& config, const Dataset& data,
                                                   const learn::LinearModel& model) {
  std::vector<features::FeatureVector> out;
  for (const auto& item : data.test) {
    if (out.size() == config.attack_samples) break;
    if (item.malicious && model.IsMalicious(item.x)) out.push_back(item.x);
  }
  if (out.empty()) {
    throw Error(ErrorCode::kDegenerateData, "no detected malicious test sample to attack");
  }
  return out;
}

std::vector<features::FeatureVector> RetrainSeeds(const Dataset& data) {
  std::vector<features::FeatureVector> out;
  for (const auto& item : data.train) {
    if (item.malicious) out.push_back(item.x);
  }
  return out;
}

ordered_json AttackSummary(const PreparedAttack& attack, const learn::LinearModel& model,
                           const std::vector<features::FeatureVector>& targets, size_t workers,
                           std::vector<learn::AttackResult>* results_out = nullptr) {
  auto results = learn::AttackAll(model, targets, attack.config, workers);
  std::vector<features::FeatureVector> variants;
  size_t evaded = 0;
  size_t flips = 0;
  for (const auto& r : results) {
    variants.push_back(r.x);
    evaded += r.evaded;
    flips += r.flips;
  }
  ordered_json s;
  s["attack"] = attack.spec->name;
  s["attacked"] = targets.size();
  s["evaded"] = evaded;
  s["robustness"] = learn::EvasionRobustness(model, variants);
  s["mean_flips"] = static_cast<double>(flips) / static_cast<double>(targets.size());
  s["frozen"] = attack.config.frozen;
  s["frozen_ignored"] = attack.ignored;
  if (results_out) *results_out = std::move(results);
  return s;
}

ordered_json RocJson(const learn::RocCurve& roc) {
  ordered_json points = ordered_json::array();
  for (const auto& p : roc.points) points.push_back({p.fpr, p.tpr});
  return points;
}

learn::LinearModel LoadModel(const Dataset& data, const fs::path& path) {
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kConfig, "model file " + path.string() + " does not exist (run train first)");
  }
  try {
    return learn::LinearModel::FromJson(ReadFile(path), data.space);
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::kSchemaViolation, path.filename().string() + ": " + e.what());
  }
}

fs::path BaselineModelPath(const RunConfig& config) {
  return config.model.empty() ? config.output_dir / "model.json" : config.model;
}

ordered_json RetrainLogJson(const std::vector<learn::IterationLog>& log) {
  ordered_json out = ordered_json::array();
  for (const auto& l : log) {
    out.push_back({{"iteration", l.iteration},
                   {"attacked", l.attacked},
                   {"evaded", l.evaded},
                   {"added", l.added},
                   {"robustness", l.robustness}});
  }
  return out;
}

ordered_json ModelEvaluation(const RunConfig& config, const Dataset& data,
                             const learn::LinearModel& model,
                             const std::vector<PreparedAttack>& attacks) {
  const auto roc = learn::RocAuc(model, data.test);
  ordered_json e;
  e["auc"] = roc.auc;
  e["roc"] = RocJson(roc);
  ordered_json rob = ordered_json::object();
  for (const auto& a : attacks) {
    rob[a.spec->name] = AttackSummary(a, model, AttackTargets(config, data, model), config.workers)["robustness"];
  }
  e["robustness"] = rob;
  return e;
}

}  // namespace

int ExitCodeFor(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->code()) {
      case ErrorCode::kConfig: return kExitConfig;
      case ErrorCode::kOracle: return kExitOracle;
      default: return kExitData;
    }
  }
  return kExitData;
}

std::vector<Document> LoadCorpus(const fs::path& path) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::recursive_directory_iterator(path)) {
      const auto ext = entry.path().extension();
      if (entry.is_regular_file() && (ext == ".pdf" || ext == ".json")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else if (fs::is_regular_file(path)) {
    files.push_back(path);
  }
  if (files.empty()) throw Error(ErrorCode::kConfig, "no .pdf or .json documents under " + path.string());

  std::vector<Document> docs;
  for (const auto& file : files) {
    const std::string id = fs::is_directory(path) ? fs::relative(file, path).generic_string()
                                                  : file.filename().string();
    const std::string bytes = ReadFile(file);
    try {
      docs.push_back({id, file.extension() == ".json" ? pdf::LoadGraphJson(bytes) : pdf::ParsePdf(bytes)});
    } catch (const Error& e) {
      throw Error(e.code(), id + ": " + e.what());
    }
  }
  return docs;
}

OracleHandle MakeOracle(const OracleSpec& spec) {
  OracleHandle h;
  if (spec.kind == "rule") {
    try {
      h.oracle = std::make_shared<oracle::RuleOracle>(oracle::ParseSignatureRules(ReadFile(spec.rules)));
    } catch (const std::invalid_argument& e) {
      throw Error(ErrorCode::kConfig, spec.rules.filename().string() + ": " + e.what());
    }
  } else if (spec.kind == "command") {
    h.oracle = std::make_shared<oracle::CommandOracle>(
        spec.program, std::chrono::milliseconds(spec.timeout_ms), spec.max_parallelism);
  } else if (spec.kind == "cache") {
    oracle::VerdictStore store;
    if (fs::exists(spec.store)) {
      try {
        store = oracle::VerdictStore::FromJsonl(ReadFile(spec.store));
      } catch (const std::invalid_argument& e) {
        throw Error(ErrorCode::kConfig, spec.store.filename().string() + ": " + e.what());
      }
    }
    std::shared_ptr<oracle::Oracle> fallback;
    if (spec.fallback) fallback = MakeOracle(*spec.fallback).oracle;
    h.cache = std::make_shared<oracle::CachedOracle>(std::move(store), spec.strict, fallback);
    h.oracle = h.cache;
  } else {
    throw Error(ErrorCode::kConfig, "config needs an oracle section");
  }
  return h;
}

Dataset LoadDataset(const RunConfig& config) {
  if (!config.dataset) throw Error(ErrorCode::kConfig, "config needs learning.dataset");
  const DatasetSpec& spec = *config.dataset;
  Dataset data;
  if (!spec.synthetic.empty()) {
    learn::SyntheticData s = spec.synthetic == "evasion_toy"
                                 ? learn::EvasionToy(spec.seed, spec.per_class)
                                 : learn::SignalDataset(spec.seed, spec.per_class, spec.num_features, spec.signal);
    data.space = s.space;
    data.train = std::move(s.train);
    data.test = std::move(s.test);
    data.marked = std::move(s.marked);
    return data;
  }
  for (const auto* p : {&spec.space, &spec.train, &spec.test}) {
    if (!fs::exists(*p)) throw Error(ErrorCode::kConfig, "data set file " + p->string() + " does not exist");
  }
  data.space = std::make_shared<const features::FeatureSpace>(
      features::FeatureSpace::FromFileText(spec.kind, ReadFile(spec.space)));
  data.train = LoadVectors(spec.train, data.space);
  data.test = LoadVectors(spec.test, data.space);
  return data;
}

void CmdExtract(const RunConfig& config) {
  std::vector<std::pair<Document, bool>> corpus;  // document, malicious
  if (!config.seeds.empty()) {
    for (auto& d : LoadCorpus(config.seeds)) corpus.emplace_back(std::move(d), true);
  }
  if (!config.clean.empty()) {
    for (auto& d : LoadCorpus(config.clean)) corpus.emplace_back(std::move(d), false);
  }
  if (corpus.empty()) throw Error(ErrorCode::kConfig, "extract needs corpus.seeds or corpus.clean");

  std::vector<pdf::ObjectGraph> graphs;
  for (const auto& [doc, malicious] : corpus) graphs.push_back(doc.graph);
  ordered_json report;
  report["config"] = ConfigJson(config);
  report["documents"] = corpus.size();
  ordered_json spaces = ordered_json::object();
  for (const auto kind : config.spaces) {
    const std::string kind_name(features::ToString(kind));
    auto space = std::make_shared<const features::FeatureSpace>(
        features::BuildFeatureSpace(graphs, kind, config.space_params));
    std::string lines;
    for (const auto& [doc, malicious] : corpus) {
      const auto names = features::DocumentFeatures(doc.graph, kind, config.space_params);
      const auto v = features::VectorizeNames(names, space).vector;
      ordered_json rec;
      rec["id"] = (malicious ? "seeds/" : "clean/") + doc.id;
      rec["label"] = malicious ? "malicious" : "benign";
      rec["bits"] = v.BitString();
      lines += rec.dump() + "\n";
    }
    Emit(config, "space." + kind_name + ".txt", space->ToFileText());
    Emit(config, "vectors." + kind_name + ".jsonl", lines);
    spaces[kind_name] = {{"features", space->size()}, {"sha256", space->Sha256()}};
  }
  report["spaces"] = spaces;
  EmitJson(config, "extract_report.json", report);
}

void CmdConserve(const RunConfig& config) {
  RequireDir(config.seeds, "seeds");
  RequireDir(config.donors, "donors");
  auto seeds = ToSeeds(LoadCorpus(config.seeds));
  const auto donors = LoadCorpus(config.donors);
  const pdf::ObjectGraph& donor = donors.front().graph;
  OracleHandle handle = MakeOracle(config.oracle);

  std::vector<pdf::ObjectGraph> graphs;
  for (const auto& s : seeds) graphs.push_back(s.graph);
  const features::FeatureSpace space =
      features::BuildFeatureSpace(graphs, features::SpaceKind::kSL2013, config.space_params);

  conserve::PassOptions options{config.depth_limit, config.workers};
  std::vector<conserve::SeedRecord> kept;
  std::vector<conserve::ConservedSets> per_seed;
  ordered_json failures = ordered_json::array();
  std::string lines;
  for (auto& seed : seeds) {
    try {
      const auto prelim = conserve::DeletionPass(seed, *handle.oracle, space, options);
      const auto sets = conserve::ReplacementPass(seed, prelim, donor, *handle.oracle, options);
      lines += conserve::ToJsonLine(sets) + "\n";
      per_seed.push_back(sets);
      kept.push_back(std::move(seed));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSeedNotMalicious) throw;
      Log(e.what());
      failures.push_back({{"seed", seed.id}, {"error", std::string(ToString(e.code()))}, {"message", e.what()}});
    }
  }
  if (handle.cache) Emit(config, "verdicts.jsonl", handle.cache->Snapshot().ToJsonl());

  ordered_json report;
  report["config"] = ConfigJson(config);
  report["oracle"] = handle.oracle->Describe();
  report["donor"] = donors.front().id;
  report["sl2013_features"] = space.size();
  report["seeds_processed"] = per_seed.size();
  report["failures"] = failures;
  Emit(config, "conserved_sets.jsonl", lines);
  EmitJson(config, "conserve_report.json", report);
  if (per_seed.empty()) {
    throw Error(ErrorCode::kSeedNotMalicious, "no seed passed the malice precondition");
  }
  EmitMappings(config, kept, per_seed);
}

void CmdMap(const RunConfig& config) {
  RequireDir(config.seeds, "seeds");
  const fs::path sets_path =
      config.conserved_sets.empty() ? config.output_dir / "conserved_sets.jsonl" : config.conserved_sets;
  if (!fs::exists(sets_path)) {
    throw Error(ErrorCode::kConfig, sets_path.string() + " does not exist (run conserve first)");
  }
  std::map<std::string, conserve::SeedRecord> by_id;
  for (auto& s : ToSeeds(LoadCorpus(config.seeds))) by_id.emplace(s.id, std::move(s));

  std::vector<conserve::SeedRecord> seeds;
  std::vector<conserve::ConservedSets> per_seed;
  const std::string text = ReadFile(sets_path);
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    const std::string line = text.substr(start, nl - start);
    start = nl + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    conserve::ConservedSets sets;
    try {
      sets = conserve::ConservedSetsFromJson(line);
    } catch (const std::invalid_argument& e) {
      throw Error(ErrorCode::kSchemaViolation, sets_path.filename().string() + ": " + e.what());
    }
    auto it = by_id.find(sets.seed_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kSchemaViolation, "conserved sets name unknown seed " + sets.seed_id);
    }
    seeds.push_back(it->second);
    per_seed.push_back(std::move(sets));
  }
  if (per_seed.empty()) throw Error(ErrorCode::kDegenerateData, sets_path.string() + " holds no seeds");
  EmitMappings(config, seeds, per_seed);
}

void CmdTrain(const RunConfig& config) {
  const Dataset data = LoadDataset(config);
  const auto model = learn::Train(data.train, config.train);
  size_t correct = 0;
  for (const auto& item : data.train) correct += model.IsMalicious(item.x) == item.malicious;
  ordered_json report;
  report["config"] = ConfigJson(config);
  report["features"] = data.space->size();
  report["train_rows"] = data.train.size();
  report["objective"] = learn::Objective(data.train, model.weights(), model.bias(), model.reg());
  report["train_accuracy"] = static_cast<double>(correct) / static_cast<double>(data.train.size());
  report["test_auc"] = learn::RocAuc(model, data.test).auc;
  report["selected"] = learn::SelectedFeatures(model);
  Emit(config, "model.json", model.ToJson());
  EmitJson(config, "train_report.json", report);
}

void CmdAttack(const RunConfig& config) {
  const Dataset data = LoadDataset(config);
  const auto model = LoadModel(data, BaselineModelPath(config));
  const auto targets = AttackTargets(config, data, model);
  ordered_json report;
  report["config"] = ConfigJson(config);
  ordered_json summaries = ordered_json::array();
  for (const auto& attack : PrepareAttacks(config, data)) {
    std::vector<learn::AttackResult> results;
    summaries.push_back(AttackSummary(attack, model, targets, config.workers, &results));
    std::string lines;
    for (size_t i = 0; i < results.size(); ++i) {
      ordered_json rec;
      rec["index"] = i;
      rec["evaded"] = results[i].evaded;
      rec["score"] = results[i].score;
      rec["flips"] = results[i].flips;
      rec["bits"] = results[i].x.BitString();
      lines += rec.dump() + "\n";
    }
    Emit(config, "attack_" + attack.spec->name + ".jsonl", lines);
  }
  report["attacks"] = summaries;
  EmitJson(config, "attack_report.json", report);
}

void CmdRetrain(const RunConfig& config) {
  const Dataset data = LoadDataset(config);
  const auto model0 = LoadModel(data, BaselineModelPath(config));
  const auto seeds = RetrainSeeds(data);
  ordered_json report;
  report["config"] = ConfigJson(config);
  ordered_json runs = ordered_json::array();
  for (const auto& attack : PrepareAttacks(config, data)) {
    const auto result = learn::RetrainIterative(model0, learn::FeatureSpaceAttack(attack.config),
                                                data.train, seeds, config.retrain, config.train,
                                                config.workers);
    Emit(config, "model_" + attack.spec->name + ".json", result.model.ToJson());
    runs.push_back({{"attack", attack.spec->name},
                    {"train_rows", result.data.size()},
                    {"log", RetrainLogJson(result.log)}});
  }
  report["retrain"] = runs;
  EmitJson(config, "retrain_report.json", report);
}

void CmdEvaluate(const RunConfig& config) {
  const Dataset data = LoadDataset(config);
  const auto attacks = PrepareAttacks(config, data);
  ordered_json report;
  report["config"] = ConfigJson(config);
  ordered_json models = ordered_json::object();
  models["baseline"] = ModelEvaluation(config, data, LoadModel(data, BaselineModelPath(config)), attacks);
  for (const auto& attack : attacks) {
    const fs::path path = config.output_dir / ("model_" + attack.spec->name + ".json");
    if (!fs::exists(path)) continue;
    models["retrained_" + attack.spec->name] = ModelEvaluation(config, data, LoadModel(data, path), attacks);
  }
  report["models"] = models;
  EmitJson(config, "evaluation.json", report);
}

void CmdExperiment(const RunConfig& config) {
  const Dataset data = LoadDataset(config);
  const auto attacks = PrepareAttacks(config, data);
  const auto baseline = learn::Train(data.train, config.train);
  const auto baseline_roc = learn::RocAuc(baseline, data.test);
  const auto seeds = RetrainSeeds(data);

  ordered_json report;
  report["config"] = ConfigJson(config);
  report["frozen_mask_note"] =
      "frozen features model an attacker who must keep the conserved features intact";
  report["baseline"] = {{"auc", baseline_roc.auc}, {"roc", RocJson(baseline_roc)}};
  Emit(config, "model.json", baseline.ToJson());

  ordered_json rows = ordered_json::array();
  for (const auto& attack : attacks) {
    const auto before = AttackSummary(attack, baseline, AttackTargets(config, data, baseline), config.workers);
    const auto retrained = learn::RetrainIterative(baseline, learn::FeatureSpaceAttack(attack.config),
                                                   data.train, seeds, config.retrain, config.train,
                                                   config.workers);
    const auto after = AttackSummary(attack, retrained.model,
                                     AttackTargets(config, data, retrained.model), config.workers);
    const auto roc = learn::RocAuc(retrained.model, data.test);
    Emit(config, "model_" + attack.spec->name + ".json", retrained.model.ToJson());
    ordered_json row;
    row["attack"] = attack.spec->name;
    row["baseline"] = before;
    row["retrained"] = after;
    row["retrained_auc"] = roc.auc;
    row["retrained_roc"] = RocJson(roc);
    row["robustness_delta"] = after["robustness"].get<double>() - before["robustness"].get<double>();
    row["auc_delta"] = roc.auc - baseline_roc.auc;
    row["retrain_log"] = RetrainLogJson(retrained.log);
    rows.push_back(std::move(row));
  }
  report["comparison"] = rows;

  if (config.sweep) {
    const SweepSpec& s = *config.sweep;
    learn::SweepMode mode;
    std::set<std::string> conserved;
    const bool have_conserved =
        !config.dataset->synthetic.empty() || !config.conserved.empty();
    if (have_conserved) conserved = ConservedSet(config, data);
    if (s.match_count) {
      mode = learn::MatchCount{*s.match_count};
    } else {
      mode = learn::CoverSet{s.cover_conserved ? conserved : s.cover};
    }
    const auto sweep = learn::L1Sweep(data.train, mode, s.grid, config.train, s.threshold);
    ordered_json log = ordered_json::array();
    for (const auto& p : sweep.log) log.push_back({{"C", p.C}, {"selected", p.selected}});
    ordered_json sw;
    sw["log"] = log;
    sw["reached"] = sweep.chosen.has_value();
    if (sweep.chosen) {
      const auto& chosen = sweep.log[*sweep.chosen];
      sw["chosen_C"] = chosen.C;
      sw["selected"] = chosen.selected;
      if (have_conserved) {
        const auto o = conserve::OverlapAnalysis(conserved, chosen.selected);
        sw["overlap"] = {{"overlap", o.overlap}, {"selected", o.selected}, {"conserved", o.conserved}};
      }
    } else {
      sw["error"] = std::string(ToString(ErrorCode::kTargetUnreachable));
    }
    report["l1_sweep"] = sw;
    EmitJson(config, "experiment.json", report);
    if (!sweep.chosen) {
      throw Error(ErrorCode::kTargetUnreachable, "no C in the grid meets the l1 sweep target");
    }
    return;
  }
  EmitJson(config, "experiment.json", report);
}

const std::map<std::string, CommandFn>& Commands() {
  static const std::map<std::string, CommandFn> kCommands = {
      {"extract", &CmdExtract}, {"conserve", &CmdConserve}, {"map", &CmdMap},
      {"train", &CmdTrain},     {"attack", &CmdAttack},     {"retrain", &CmdRetrain},
      {"evaluate", &CmdEvaluate}, {"experiment", &CmdExperiment},
  };
  return kCommands;
}

}  // namespace cpath::cli
