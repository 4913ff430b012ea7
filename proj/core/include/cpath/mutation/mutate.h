#ifndef CPATH_MUTATION_MUTATE_H_
#define CPATH_MUTATION_MUTATE_H_

#include <string>
#include <vector>

#include "cpath/features/extract.h"
#include "cpath/features/path.h"
#include "cpath/features/walk.h"
#include "cpath/pdf/graph.h"

namespace cpath::mutation {

// A (container, key) pair realizing a structural path: the dictionary
// reached from numbered object `owner` by `container` steps, holding `key`.
struct Site {
  pdf::ObjectNumber owner = 0;
  std::vector<features::Step> container;
  std::string key;

  // "owner:step/step/key", e.g. "1:OpenAction" or "7:Names/0/JS".
  std::string ToString() const;

  friend bool operator==(const Site&, const Site&) = default;
  friend auto operator<=>(const Site&, const Site&) = default;
};

struct MutationOutcome {
  pdf::ObjectGraph graph;
  std::vector<Site> sites;
  features::PathSet flipped;  // paths present before and absent after
};

// Value stored under the site's key, nullptr if the site does not exist.
const pdf::Object* ValueAt(const pdf::ObjectGraph& graph, const Site& site);

// Every distinct site whose traversal realizes `path`, in sorted order.
// Uses the same cycle guard as path extraction. Empty if the path is absent.
std::vector<Site> LocateSites(const pdf::ObjectGraph& graph,
                              const features::StructuralPath& path);

// Removes the key at every site in one mutation. Objects that become
// unreachable stay in the body. Throws Error{kPathAbsent}.
MutationOutcome DeletePath(const pdf::ObjectGraph& graph,
                           const features::StructuralPath& path,
                           size_t depth_limit = features::kDefaultDepthLimit);

// Stores a copy of `donor` at every site. References inside the donor are
// interpreted in `graph`; streams inside it are appended as new numbered
// objects (shared by all sites). Throws Error{kPathAbsent}.
MutationOutcome ReplacePath(const pdf::ObjectGraph& graph,
                            const features::StructuralPath& path,
                            const pdf::Object& donor,
                            size_t depth_limit = features::kDefaultDepthLimit);

// Paths that disappear when `path` is deleted, excluding `path` itself.
features::PathSet ProbeDependents(const pdf::ObjectGraph& graph,
                                  const features::StructuralPath& path,
                                  size_t depth_limit = features::kDefaultDepthLimit);

// Copy of `object` with every reference replaced by the object it resolves
// to. References that dangle or close a cycle become null; `max_depth`
// bounds the nesting of the result. Streams are kept as values.
pdf::Object Materialize(const pdf::ObjectGraph& graph, const pdf::Object& object,
                        size_t max_depth = 32);

// Donor for replacing `path`: the donor graph's value at the same path if
// present (first site), else the first dictionary-valued catalog entry, else
// the text "benign". Returned materialized, so it is self-contained.
pdf::Object SelectDonor(const pdf::ObjectGraph& donor_graph,
                        const features::StructuralPath& path);

}  // namespace cpath::mutation

#endif  // CPATH_MUTATION_MUTATE_H_
