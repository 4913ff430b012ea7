#ifndef CPATH_CONSERVE_PASSES_H_
#define CPATH_CONSERVE_PASSES_H_

#include <cstddef>
#include <string>

#include "cpath/conserve/conserved_sets.h"
#include "cpath/features/extract.h"
#include "cpath/features/space.h"
#include "cpath/oracle/oracle.h"
#include "cpath/pdf/graph.h"

namespace cpath::conserve {

struct SeedRecord {
  std::string id;
  pdf::ObjectGraph graph;
  oracle::Outcome label = oracle::Outcome::kMalicious;
};

struct PassOptions {
  size_t depth_limit = features::kDefaultDepthLimit;
  // Upper bound on concurrent oracle calls; the oracle's own limit also
  // applies.
  size_t workers = 1;
};

// Throws Error{kSeedNotMalicious} unless the seed is labeled malicious and
// the oracle agrees on its serialized bytes. Oracle errors propagate.
void CheckSeed(const SeedRecord& seed, oracle::Oracle& oracle);

// Deletes each SL2013 feature that is set on the seed and asks the oracle
// about the result: malicious puts the feature in O, benign in S (provisional),
// an oracle error in inconclusive. D records what each deletion removed.
ConservedSets DeletionPass(const SeedRecord& seed, oracle::Oracle& oracle,
                           const features::FeatureSpace& space,
                           const PassOptions& options = {});

// Replaces each feature of prelim.S with a donor object taken from
// `donor_graph`; a malicious verdict moves the feature to O, an oracle error
// to inconclusive.
ConservedSets ReplacementPass(const SeedRecord& seed, const ConservedSets& prelim,
                              const pdf::ObjectGraph& donor_graph, oracle::Oracle& oracle,
                              const PassOptions& options = {});

}  // namespace cpath::conserve

#endif  // CPATH_CONSERVE_PASSES_H_
