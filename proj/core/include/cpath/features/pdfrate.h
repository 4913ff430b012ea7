#ifndef CPATH_FEATURES_PDFRATE_H_
#define CPATH_FEATURES_PDFRATE_H_

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cpath/pdf/graph.h"

namespace cpath::features {

// A count feature: occurrences of any `match` token as a dictionary key or
// a name value, binarized as count >= threshold.
struct CountFeatureDef {
  std::string name;
  std::set<std::string> match;
  size_t threshold = 1;
};

// count_javascript, count_js, count_page and count_box_other.
std::vector<CountFeatureDef> DefaultCountFeatureDefs();

// JSON array of {"name", "match": [...], "threshold"}; throws
// std::invalid_argument on schema problems or duplicate names.
std::vector<CountFeatureDef> ParseCountFeatureDefs(std::string_view json_text);

// Raw counts over every object in the body and the trailer, reachable or
// not.
std::map<std::string, size_t> CountOccurrences(const pdf::ObjectGraph& graph,
                                               const std::vector<CountFeatureDef>& defs);

// Names of definitions whose count reaches the threshold.
std::set<std::string> BinarizedCountFeatures(const pdf::ObjectGraph& graph,
                                             const std::vector<CountFeatureDef>& defs);

}  // namespace cpath::features

#endif  // CPATH_FEATURES_PDFRATE_H_
