#ifndef CPATH_CONSERVE_MAPPING_H_
#define CPATH_CONSERVE_MAPPING_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cpath/conserve/conserved_sets.h"
#include "cpath/conserve/elimination.h"
#include "cpath/conserve/passes.h"
#include "cpath/features/consolidate.h"
#include "cpath/features/pdfrate.h"

namespace cpath::conserve {

struct HidostMapping {
  FeatureSet features;
  // SL2013 feature -> consolidated name, only where the rules rewrote it.
  std::map<std::string, std::string> rewritten;
  // Consolidated name -> the SL2013 features that collapsed into it, only
  // where more than one did.
  std::map<std::string, FeatureSet> collisions;
};

HidostMapping MapToHidost(const UniformResult& uniform,
                          const std::vector<features::ConsolidationRule>& rules);

struct PdfRateBMapping {
  // Per seed: S holds count features turned off by deleting some conserved
  // path; O holds those turned off only by deleting non-conserved paths.
  // D is always empty.
  std::vector<ConservedSets> per_seed;
  UniformResult uniform;
};

// `per_seed` must be aligned with `seeds`. Throws std::invalid_argument on
// misalignment; mutation errors propagate.
PdfRateBMapping MapToPdfRateB(const std::vector<SeedRecord>& seeds,
                              const std::vector<ConservedSets>& per_seed,
                              const std::vector<features::CountFeatureDef>& defs,
                              const Rational& beta = Rational(3, 1),
                              size_t depth_limit = features::kDefaultDepthLimit);

// True when a feature name refers to JavaScript: a path component "JS" or
// "JavaScript", or a count feature named after one ("count_js").
bool InvolvesJavaScript(std::string_view feature);

struct Overlap {
  size_t overlap = 0;
  size_t selected = 0;
  size_t conserved = 0;
};

Overlap OverlapAnalysis(const FeatureSet& conserved, const FeatureSet& selected);

}  // namespace cpath::conserve

#endif  // CPATH_CONSERVE_MAPPING_H_
