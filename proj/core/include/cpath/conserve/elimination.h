#ifndef CPATH_CONSERVE_ELIMINATION_H_
#define CPATH_CONSERVE_ELIMINATION_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cpath/conserve/conserved_sets.h"
#include "cpath/conserve/rational.h"

namespace cpath::conserve {

enum class TraceAction { kKept, kEliminated, kSkipped };

std::string_view ToString(TraceAction action);

struct TraceEntry {
  std::string feature;
  size_t o_count = 0;
  size_t s_count = 0;
  TraceAction action = TraceAction::kKept;
  // For kEliminated: {feature} plus its merged dependents, in order.
  std::vector<std::string> removed;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct UniformResult {
  FeatureSet S;
  FeatureSet eliminated;  // members of the initial union removed from S
  FeatureSet visited_Q;
  Rational beta;
  std::vector<TraceEntry> trace;

  friend bool operator==(const UniformResult&, const UniformResult&) = default;
};

// Merges per-seed sets into one conserved set. Starting from the union of
// the S sets, features are visited in lexicographic order; a feature not yet
// in Q whose O-count reaches beta times its S-count is removed from S
// together with its merged dependents, and all of them join Q.
// Throws std::invalid_argument when `sets` is empty.
UniformResult ForwardElimination(const std::vector<ConservedSets>& sets,
                                 const Rational& beta = Rational(3, 1));

// {"S": [...], "eliminated": [...], "visited_Q": [...], "beta": "3",
//  "trace": [{"feature", "o_count", "s_count", "action"}...]}
std::string UniformResultToJson(const UniformResult& result);

}  // namespace cpath::conserve

#endif  // CPATH_CONSERVE_ELIMINATION_H_
