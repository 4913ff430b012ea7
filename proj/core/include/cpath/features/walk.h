#ifndef CPATH_FEATURES_WALK_H_
#define CPATH_FEATURES_WALK_H_

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "cpath/features/path.h"
#include "cpath/pdf/graph.h"

namespace cpath::features {

// One step inside a numbered object's value: a dictionary key or an array
// index. A (owner, steps) pair addresses a container without copying it.
using Step = std::variant<std::string, size_t>;

struct Edge {
  const StructuralPath& path;          // path including `key`
  pdf::ObjectNumber owner;             // numbered object holding the container
  const std::vector<Step>& container;  // steps from owner's value to the dict
  const std::string& key;
  const pdf::Object& value;            // unresolved value stored under key
};

// Depth-first walk over every dictionary edge reachable from the catalog.
//
// Dictionary keys append one path component (except a stream's /Length,
// which the payload determines), arrays are transparent and
// references are followed. A reference whose object is already on the
// current root-to-node chain, or which does not resolve, is not followed
// (the edge that holds it is still reported). Edges whose path would exceed
// depth_limit are not reported. `visit` returns whether to descend into the
// edge's value. Keys are visited in dictionary order, so the walk is
// deterministic.
void WalkEdges(const pdf::ObjectGraph& graph, size_t depth_limit,
               const std::function<bool(const Edge&)>& visit);

}  // namespace cpath::features

#endif  // CPATH_FEATURES_WALK_H_
