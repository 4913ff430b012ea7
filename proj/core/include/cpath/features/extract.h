#ifndef CPATH_FEATURES_EXTRACT_H_
#define CPATH_FEATURES_EXTRACT_H_

#include <cstddef>

#include "cpath/features/path.h"
#include "cpath/pdf/graph.h"

namespace cpath::features {

inline constexpr size_t kDefaultDepthLimit = 10;

// All structural paths reachable from the catalog (see WalkEdges for the
// traversal rules). The catalog itself contributes no component, so a
// document whose catalog has no keys yields the empty set.
PathSet ExtractPaths(const pdf::ObjectGraph& graph,
                     size_t depth_limit = kDefaultDepthLimit);

}  // namespace cpath::features

#endif  // CPATH_FEATURES_EXTRACT_H_
