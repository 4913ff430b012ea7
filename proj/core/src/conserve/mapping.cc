#include "cpath/conserve/mapping.h"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <stdexcept>

#include "cpath/mutation/mutate.h"

namespace cpath::conserve {

HidostMapping MapToHidost(const UniformResult& uniform,
                          const std::vector<features::ConsolidationRule>& rules) {
  HidostMapping mapping;
  std::map<std::string, FeatureSet> sources;
  for (const auto& name : uniform.S) {
    const std::string image =
        features::Consolidate(features::StructuralPath::Parse(name), rules).rendered();
    if (image != name) mapping.rewritten[name] = image;
    sources[image].insert(name);
    mapping.features.insert(image);
  }
  for (auto& [image, from] : sources) {
    if (from.size() > 1) mapping.collisions[image] = std::move(from);
  }
  return mapping;
}

PdfRateBMapping MapToPdfRateB(const std::vector<SeedRecord>& seeds,
                              const std::vector<ConservedSets>& per_seed,
                              const std::vector<features::CountFeatureDef>& defs,
                              const Rational& beta, size_t depth_limit) {
  if (seeds.size() != per_seed.size()) {
    throw std::invalid_argument("seed list and conserved sets differ in length");
  }
  PdfRateBMapping mapping;
  for (size_t i = 0; i < seeds.size(); ++i) {
    const auto& seed = seeds[i];
    const auto& sets = per_seed[i];
    if (sets.seed_id != seed.id) {
      throw std::invalid_argument("conserved sets for " + sets.seed_id + " aligned with seed " + seed.id);
    }
    const FeatureSet before = features::BinarizedCountFeatures(seed.graph, defs);
    auto turned_off = [&](const std::string& path) {
      auto outcome = mutation::DeletePath(seed.graph, features::StructuralPath::Parse(path), depth_limit);
      const FeatureSet after = features::BinarizedCountFeatures(outcome.graph, defs);
      FeatureSet off;
      std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                          std::inserter(off, off.end()));
      return off;
    };
    ConservedSets out;
    out.seed_id = seed.id;
    for (const auto& p : sets.S) {
      const FeatureSet off = turned_off(p);
      out.S.insert(off.begin(), off.end());
    }
    for (const auto& p : sets.O) {
      for (const auto& f : turned_off(p)) {
        if (!out.S.count(f)) out.O.insert(f);
      }
    }
    mapping.per_seed.push_back(std::move(out));
  }
  mapping.uniform = ForwardElimination(mapping.per_seed, beta);
  return mapping;
}

Overlap OverlapAnalysis(const FeatureSet& conserved, const FeatureSet& selected) {
  Overlap result;
  result.conserved = conserved.size();
  result.selected = selected.size();
  for (const auto& f : selected) result.overlap += conserved.count(f);
  return result;
}

bool InvolvesJavaScript(std::string_view feature) {
  size_t start = 0;
  while (start <= feature.size()) {
    size_t end = feature.find_first_of("/_", start);
    if (end == std::string_view::npos) end = feature.size();
    std::string token(feature.substr(start, end - start));
    std::transform(token.begin(), token.end(), token.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (token == "js" || token == "javascript") return true;
    start = end + 1;
  }
  return false;
}

}  // namespace cpath::conserve
