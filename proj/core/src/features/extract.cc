#include "cpath/features/extract.h"

#include "cpath/features/walk.h"

namespace cpath::features {

PathSet ExtractPaths(const pdf::ObjectGraph& graph, size_t depth_limit) {
  PathSet out;
  WalkEdges(graph, depth_limit, [&](const Edge& e) {
    out.insert(e.path);
    return true;
  });
  return out;
}

}  // namespace cpath::features
