#include "cpath/conserve/passes.h"

#include <algorithm>
#include <optional>
#include <vector>

#include "cpath/features/extract.h"
#include "cpath/mutation/mutate.h"
#include "cpath/pdf/writer.h"
#include "cpath/util/error.h"
#include "cpath/util/parallel.h"

namespace cpath::conserve {
namespace {

enum class Probe { kMalicious, kBenign, kInconclusive };

Probe Ask(oracle::Oracle& oracle, const pdf::ObjectGraph& graph) {
  const std::string bytes = pdf::SerializePdf(graph);
  try {
    return oracle.Evaluate(bytes).malicious() ? Probe::kMalicious : Probe::kBenign;
  } catch (const oracle::OracleError&) {
    return Probe::kInconclusive;
  }
}

size_t Workers(const PassOptions& options, const oracle::Oracle& oracle) {
  return std::max<size_t>(1, std::min(options.workers, oracle.max_parallelism()));
}

}  // namespace

void CheckSeed(const SeedRecord& seed, oracle::Oracle& oracle) {
  if (seed.label != oracle::Outcome::kMalicious) {
    throw Error(ErrorCode::kSeedNotMalicious, "seed " + seed.id + " is labeled benign");
  }
  if (!oracle.Evaluate(pdf::SerializePdf(seed.graph)).malicious()) {
    throw Error(ErrorCode::kSeedNotMalicious,
                "oracle " + oracle.Describe() + " finds seed " + seed.id + " benign");
  }
}

ConservedSets DeletionPass(const SeedRecord& seed, oracle::Oracle& oracle,
                           const features::FeatureSpace& space, const PassOptions& options) {
  if (space.kind() != features::SpaceKind::kSL2013) {
    throw Error(ErrorCode::kSpaceMismatch, "deletion pass needs an sl2013 space");
  }
  CheckSeed(seed, oracle);

  std::vector<features::StructuralPath> probes;
  for (const auto& path : features::ExtractPaths(seed.graph, options.depth_limit)) {
    if (space.IndexOf(path.rendered())) probes.push_back(path);
  }

  std::vector<Probe> verdicts(probes.size());
  std::vector<FeatureSet> deps(probes.size());
  ParallelFor(probes.size(), Workers(options, oracle), [&](size_t i) {
    auto outcome = mutation::DeletePath(seed.graph, probes[i], options.depth_limit);
    for (const auto& p : outcome.flipped) {
      if (p != probes[i] && space.IndexOf(p.rendered())) deps[i].insert(p.rendered());
    }
    verdicts[i] = Ask(oracle, outcome.graph);
  });

  ConservedSets sets;
  sets.seed_id = seed.id;
  for (size_t i = 0; i < probes.size(); ++i) {
    const std::string& name = probes[i].rendered();
    switch (verdicts[i]) {
      case Probe::kMalicious: sets.O.insert(name); break;
      case Probe::kBenign: sets.S.insert(name); break;
      case Probe::kInconclusive: sets.inconclusive.insert(name); break;
    }
    if (!deps[i].empty()) sets.D[name] = std::move(deps[i]);
  }
  return sets;
}

ConservedSets ReplacementPass(const SeedRecord& seed, const ConservedSets& prelim,
                              const pdf::ObjectGraph& donor_graph, oracle::Oracle& oracle,
                              const PassOptions& options) {
  const std::vector<std::string> candidates(prelim.S.begin(), prelim.S.end());
  std::vector<Probe> verdicts(candidates.size());
  ParallelFor(candidates.size(), Workers(options, oracle), [&](size_t i) {
    const auto path = features::StructuralPath::Parse(candidates[i]);
    const pdf::Object donor = mutation::SelectDonor(donor_graph, path);
    auto outcome = mutation::ReplacePath(seed.graph, path, donor, options.depth_limit);
    verdicts[i] = Ask(oracle, outcome.graph);
  });

  ConservedSets sets = prelim;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (verdicts[i] == Probe::kBenign) continue;
    sets.S.erase(candidates[i]);
    (verdicts[i] == Probe::kMalicious ? sets.O : sets.inconclusive).insert(candidates[i]);
  }
  return sets;
}

}  // namespace cpath::conserve
