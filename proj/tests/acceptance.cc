// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cpath/cli/commands.h"
#include "cpath/conserve/elimination.h"
#include "cpath/conserve/mapping.h"
#include "cpath/conserve/passes.h"
#include "cpath/features/extract.h"
#include "cpath/learn/attack.h"
#include "cpath/learn/metrics.h"
#include "cpath/learn/sweep.h"
#include "cpath/learn/synthetic.h"
#include "cpath/learn/train.h"
#include "cpath/mutation/mutate.h"
#include "cpath/oracle/rule_oracle.h"
#include "cpath/pdf/parser.h"
#include "cpath/pdf/writer.h"
#include "fixtures/fixtures.h"
#include "json.hpp"
#include "reference.h"
#include "test_util.h"

namespace cpath {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

const fs::path kDataDir = CPATH_DATA_DIR;

// Pinned tolerances.
constexpr size_t kEliminationInstances = 1000;
constexpr double kCgOptimalFraction = 0.95;
constexpr double kCgTieTolerance = 1e-9;
constexpr size_t kAttackSeeds = 100;
constexpr double kMaxAucDrop = 0.02;
constexpr double kAucTolerance = 1e-9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Join(const std::set<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return "{" + out + "}";
}

conserve::ConservedSets Sets(std::string id, conserve::FeatureSet s, conserve::FeatureSet o,
                             std::map<std::string, conserve::FeatureSet> d = {}) {
  conserve::ConservedSets c;
  c.seed_id = std::move(id);
  c.S = std::move(s);
  c.O = std::move(o);
  c.D = std::move(d);
  return c;
}

Outcome EliminationOracle() {
  std::mt19937_64 rng(20240601);
  const int64_t betas[] = {1, 2, 3, 5};
  size_t equal = 0;
  for (size_t t = 0; t < kEliminationInstances; ++t) {
    const auto sets = reference::RandomEliminationInstance(rng, 6, 10);
    const int64_t beta = betas[t % 4];
    const auto got = conserve::ForwardElimination(sets, conserve::Rational(beta, 1));
    const auto want = reference::ForwardElimination(sets, beta, 1);
    equal += got.S == want.S && got.visited_Q == want.Q;
  }
  return {equal == kEliminationInstances,
          std::to_string(equal) + "/" + std::to_string(kEliminationInstances) + " instances identical"};
}

Outcome EliminationExamples() {
  using conserve::FeatureSet;
  const conserve::Rational beta(3, 1);
  const auto four = conserve::ForwardElimination(
      {Sets("1", {"a", "b"}, {}), Sets("2", {"b"}, {"a"}), Sets("3", {"b"}, {"a"}), Sets("4", {"b"}, {"a"})},
      beta);
  const auto single = conserve::ForwardElimination({Sets("1", {"a", "b", "c"}, {"d", "e"})}, beta);
  const auto cascade = conserve::ForwardElimination(
      {Sets("1", {"a", "b"}, {}, {{"a", {"b"}}}), Sets("2", {"b"}, {"a"}), Sets("3", {"b"}, {"a"}),
       Sets("4", {"b"}, {"a"})},
      beta);
  const bool ok1 = four.S == FeatureSet{"b"} && four.eliminated == FeatureSet{"a"};
  const bool ok2 = single.S == FeatureSet{"a", "b", "c"};
  const bool ok3 = cascade.S.empty() && cascade.visited_Q == FeatureSet{"a", "b"};
  return {ok1 && ok2 && ok3, std::string("four-seed ") + (ok1 ? "ok" : "wrong") + ", single seed " +
                                 (ok2 ? "ok" : "wrong") + ", dependence cascade " + (ok3 ? "ok" : "wrong")};
}

Outcome FixtureTable() {
  oracle::RuleOracle oracle(oracle::ParseSignatureRules(fixtures::SignatureRulesJson()));
  const auto corpus = fixtures::MaliciousCorpus();
  std::vector<pdf::ObjectGraph> graphs;
  for (const auto& d : corpus) graphs.push_back(d.graph);
  const auto space = features::BuildFeatureSpace(graphs, features::SpaceKind::kSL2013, {});
  std::vector<conserve::SeedRecord> seeds;
  std::vector<conserve::ConservedSets> per_seed;
  for (const auto& d : corpus) {
    // Seeds go through the writer and parser like files on disk.
    conserve::SeedRecord seed{d.id, pdf::ParsePdf(pdf::SerializePdf(d.graph))};
    const auto prelim = conserve::DeletionPass(seed, oracle, space);
    per_seed.push_back(conserve::ReplacementPass(seed, prelim, fixtures::BenignDonor(), oracle));
    seeds.push_back(std::move(seed));
  }
  const auto uniform = conserve::ForwardElimination(per_seed);
  const auto expected = fixtures::ExpectedConservedPaths();
  const bool contains = std::includes(uniform.S.begin(), uniform.S.end(), expected.begin(), expected.end());
  std::set<std::string> decoys;
  for (const auto& d : fixtures::DecoyPaths()) {
    if (uniform.S.count(d)) decoys.insert(d);
  }
  const auto pdfrate = conserve::MapToPdfRateB(seeds, per_seed, features::DefaultCountFeatureDefs());
  const bool counts = pdfrate.uniform.S.count("count_js") && pdfrate.uniform.S.count("count_javascript");
  // JavaScript-relevance column: the JS-named paths are flagged, the rest are not.
  std::set<std::string> js;
  for (const auto& f : uniform.S) {
    if (conserve::InvolvesJavaScript(f)) js.insert(f);
  }
  const std::set<std::string> want_js = {"/Names/JavaScript", "/Names/JavaScript/Names",
                                         "/Names/JavaScript/Names/JS", "/OpenAction/JS"};
  return {contains && decoys.empty() && counts && js == want_js,
          "S=" + Join(uniform.S) + " decoys_kept=" + Join(decoys) + " pdfrate_b=" + Join(pdfrate.uniform.S) +
              " js_column=" + Join(js)};
}

Outcome MutationInvariants() {
  size_t pairs = 0;
  size_t bad = 0;
  for (const auto& [id, g] : fixtures::AllFixtures()) {
    for (const auto& p : features::ExtractPaths(g)) {
      ++pairs;
      const auto del = mutation::DeletePath(g, p);
      const bool flipped = del.flipped.count(p) && !features::ExtractPaths(del.graph).count(p);
      const bool gone = mutation::LocateSites(del.graph, p).empty();
      const auto rep = mutation::ReplacePath(g, p, mutation::SelectDonor(fixtures::BenignDonor(), p));
      const bool present = features::ExtractPaths(rep.graph).count(p) != 0;
      auto minus_self = del.flipped;
      minus_self.erase(p);
      const auto deps = mutation::ProbeDependents(g, p);
      const bool probe = !deps.count(p) && deps == minus_self;
      if (!(flipped && gone && present && probe)) {
        ++bad;
        std::fprintf(stderr, "mutation invariant broken: %s %s\n", id.c_str(), p.rendered().c_str());
      }
    }
  }
  return {bad == 0 && pairs >= 30,
          std::to_string(pairs - bad) + "/" + std::to_string(pairs) + " path/fixture pairs hold"};
}

Outcome RoundTrip() {
  size_t graphs = 0;
  size_t bad = 0;
  auto check = [&](const pdf::ObjectGraph& g) {
    ++graphs;
    const auto back = pdf::ParsePdf(pdf::SerializePdf(g));
    if (features::ExtractPaths(back) != features::ExtractPaths(g)) ++bad;
  };
  for (const auto& [id, g] : fixtures::AllFixtures()) {
    check(g);
    for (const auto& p : features::ExtractPaths(g)) {
      check(mutation::DeletePath(g, p).graph);
      check(mutation::ReplacePath(g, p, mutation::SelectDonor(fixtures::BenignDonor(), p)).graph);
    }
  }
  return {bad == 0, std::to_string(graphs - bad) + "/" + std::to_string(graphs) +
                        " graphs (fixtures and their mutants) keep their path sets"};
}

features::SpacePtr NumberedSpace(size_t d) {
  std::vector<std::string> names;
  for (size_t j = 0; j < d; ++j) names.push_back("f" + std::to_string(j));
  return std::make_shared<const features::FeatureSpace>(features::SpaceKind::kSL2013, names);
}

Outcome GreedyVsExhaustive() {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> normal;
  const size_t models = 200;
  size_t optimal = 0;
  size_t improved = 0;
  size_t frozen_ok = 0;
  for (size_t t = 0; t < models; ++t) {
    const size_t d = 1 + rng() % 12;
    std::vector<double> w(d);
    for (auto& v : w) v = normal(rng);
    const double b = normal(rng);
    std::vector<uint8_t> bits(d);
    std::vector<bool> frozen(d);
    for (size_t j = 0; j < d; ++j) {
      bits[j] = rng() % 2;
      frozen[j] = rng() % 4 == 0;
    }
    const learn::LinearModel model(NumberedSpace(d), w, b, {});
    const features::FeatureVector x(model.space(), bits);
    learn::CoordinateGreedyParams p;
    p.restarts = 8;
    const auto r = learn::CoordinateGreedy(model, x, p, frozen, t);
    optimal += std::abs(r.q - reference::ExhaustiveMinimumQ(w, b, bits, frozen, p.lambda)) <= kCgTieTolerance;
    improved += r.q <= learn::GreedyObjective(model, x, x, p.lambda) + kCgTieTolerance;
    bool same = true;
    for (size_t j = 0; j < d; ++j) same = same && (!frozen[j] || r.x[j] == x[j]);
    frozen_ok += same;
  }
  const bool pass = optimal >= kCgOptimalFraction * models && improved == models && frozen_ok == models;
  return {pass, "optimal " + std::to_string(optimal) + "/200, Q(x')<=Q(x) " + std::to_string(improved) +
                    "/200, frozen kept " + std::to_string(frozen_ok) + "/200"};
}

Outcome FrozenConservedRobustness() {
  const auto data = learn::EvasionToy(7, 200);
  learn::TrainOptions train;
  train.reg = {learn::RegKind::kL2, 1.0};
  const auto model = learn::Train(data.train, train);
  std::vector<features::FeatureVector> targets;
  for (const auto& r : data.test) {
    if (r.malicious && model.IsMalicious(r.x) && targets.size() < 100) targets.push_back(r.x);
  }
  learn::AttackConfig free;
  free.kind = learn::CoordinateGreedyParams{learn::kDefaultLambda, 5, 8};
  learn::AttackConfig frozen = free;
  frozen.frozen = data.marked;
  double free_total = 0;
  double frozen_total = 0;
  size_t strictly_lower = 0;
  for (uint64_t s = 0; s < kAttackSeeds; ++s) {
    free.rng_seed = frozen.rng_seed = s * 1000003;
    auto rate = [&](const learn::AttackConfig& cfg) {
      size_t evaded = 0;
      for (const auto& r : learn::AttackAll(model, targets, cfg, 4)) evaded += r.evaded;
      return static_cast<double>(evaded) / static_cast<double>(targets.size());
    };
    const double a = rate(free);
    const double b = rate(frozen);
    free_total += a;
    frozen_total += b;
    strictly_lower += b < a;
  }
  const double free_mean = free_total / kAttackSeeds;
  const double frozen_mean = frozen_total / kAttackSeeds;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "mean evasion success unrestricted %.4f vs frozen %.4f over %zu seeds; frozen lower on %zu seeds",
                free_mean, frozen_mean, kAttackSeeds, strictly_lower);
  return {frozen_mean < free_mean, buf};
}

int RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "cpath");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli::Main(static_cast<int>(argv.size()), argv.data());
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome RetrainingLoop() {
  testing::TempDir dir;
  const fs::path out = dir.path() / "toy";
  if (RunCli({"experiment", "--config", (kDataDir / "toy_experiment.json").string(), "--out", out.string()}) != 0) {
    return {false, "experiment command failed"};
  }
  const json report = json::parse(Slurp(out / "experiment.json"));
  bool pass = !report["comparison"].empty();
  std::string detail;
  for (const auto& row : report["comparison"]) {
    const double before = row["baseline"]["robustness"];
    const double after = row["retrained"]["robustness"];
    const double auc_delta = row["auc_delta"];
    pass = pass && after >= before && auc_delta >= -kMaxAucDrop;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s robustness %.2f->%.2f auc %+.5f", detail.empty() ? "" : "; ",
                  row["attack"].get<std::string>().c_str(), before, after, auc_delta);
    detail += buf;
  }
  return {pass, detail};
}

Outcome AucCorrectness() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 1);
  size_t ok = 0;
  for (int t = 0; t < 100; ++t) {
    const size_t n = 2 + rng() % 49;
    std::vector<double> scores(n);
    std::vector<bool> labels(n);
    for (size_t i = 0; i < n; ++i) {
      // Half the sets are rounded to force ties.
      scores[i] = t % 2 ? std::round(u(rng) * 5) : u(rng);
      labels[i] = rng() % 2;
    }
    labels[0] = true;
    labels[1] = false;
    ok += std::abs(learn::RocFromScores(scores, labels).auc - reference::PairwiseConcordance(scores, labels)) <=
          kAucTolerance;
  }
  const double hand = learn::RocFromScores({0.9, 0.7, 0.8, 0.1}, {true, true, false, false}).auc;
  return {ok == 100 && hand == 0.75,
          std::to_string(ok) + "/100 random sets match concordance; hand example " + std::to_string(hand)};
}

Outcome L1SweepSignal() {
  const auto data = learn::SignalDataset(11);
  std::vector<double> grid;
  for (double c = 0.002; c <= 1.1; c *= 2) grid.push_back(c);
  const auto sweep = learn::L1Sweep(data.train, learn::MatchCount{3}, grid, learn::TrainOptions{});
  bool monotone = true;
  std::string counts;
  for (size_t i = 0; i < sweep.log.size(); ++i) {
    if (i > 0) monotone = monotone && sweep.log[i].selected.size() >= sweep.log[i - 1].selected.size();
    counts += (i ? "," : "") + std::to_string(sweep.log[i].selected.size());
  }
  const bool found = sweep.chosen && sweep.log[*sweep.chosen].selected == data.marked;
  const std::string chosen = sweep.chosen ? Join(sweep.log[*sweep.chosen].selected) : "none";
  return {found && monotone, "chosen " + chosen + ", selected counts [" + counts + "]"};
}

std::map<std::string, std::string> Snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = Slurp(e.path());
  }
  return files;
}

Outcome Determinism() {
  testing::TempDir dir;
  const std::vector<std::pair<std::string, std::string>> steps = {
      {"extract", "fixture_run.json"},    {"conserve", "fixture_run.json"}, {"map", "fixture_run.json"},
      {"train", "toy_experiment.json"},   {"attack", "toy_experiment.json"}, {"retrain", "toy_experiment.json"},
      {"evaluate", "toy_experiment.json"}, {"experiment", "toy_experiment.json"},
      {"experiment", "signal_sweep.json"},
  };
  size_t identical = 0;
  std::string failed;
  for (const auto& [command, cfg] : steps) {
    std::vector<std::map<std::string, std::string>> runs;
    for (const char* tag : {"a", "b"}) {
      const fs::path out = dir.path() / tag / cfg;
      if (RunCli({command, "--config", (kDataDir / cfg).string(), "--out", out.string()}) != 0) {
        return {false, command + " failed on " + cfg};
      }
      runs.push_back(Snapshot(out));
    }
    if (runs[0] == runs[1] && !runs[0].empty()) {
      ++identical;
    } else {
      failed += " " + command;
    }
  }
  return {identical == steps.size(), std::to_string(identical) + "/" + std::to_string(steps.size()) +
                                         " command runs byte-identical" + (failed.empty() ? "" : ";" + failed)};
}

}  // namespace
}  // namespace cpath

int main() {
  using cpath::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"forward elimination equals the brute-force transcription", cpath::EliminationOracle},
      {"forward elimination worked examples", cpath::EliminationExamples},
      {"fixture conserved table", cpath::FixtureTable},
      {"mutation invariants over the fixture matrix", cpath::MutationInvariants},
      {"parse/serialize round trip", cpath::RoundTrip},
      {"coordinate greedy vs exhaustive search", cpath::GreedyVsExhaustive},
      {"frozen conserved features lower evasion", cpath::FrozenConservedRobustness},
      {"retraining keeps robustness and AUC", cpath::RetrainingLoop},
      {"ROC AUC equals pairwise concordance", cpath::AucCorrectness},
      {"l1 sweep recovers the signal features", cpath::L1SweepSignal},
      {"CLI determinism", cpath::Determinism},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
