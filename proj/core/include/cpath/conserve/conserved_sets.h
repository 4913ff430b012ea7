#ifndef CPATH_CONSERVE_CONSERVED_SETS_H_
#define CPATH_CONSERVE_CONSERVED_SETS_H_

#include <map>
#include <set>
#include <string>
#include <string_view>

namespace cpath::conserve {

using FeatureSet = std::set<std::string>;

// Per-seed classification of probed features. S and O are disjoint; D maps
// a probed feature to the other features its deletion removes.
struct ConservedSets {
  std::string seed_id;
  FeatureSet S;
  FeatureSet O;
  FeatureSet inconclusive;
  std::map<std::string, FeatureSet> D;

  FeatureSet Probed() const;

  friend bool operator==(const ConservedSets&, const ConservedSets&) = default;
};

// One JSON object per line:
// {"seed": id, "S": [...], "O": [...], "inconclusive": [...], "D": {...}}.
// Entries of D with an empty set are omitted.
std::string ToJsonLine(const ConservedSets& sets);
// Throws std::invalid_argument.
ConservedSets ConservedSetsFromJson(std::string_view line);

}  // namespace cpath::conserve

#endif  // CPATH_CONSERVE_CONSERVED_SETS_H_
