#include "cpath/features/space.h"

#include <algorithm>
#include <stdexcept>

#include "cpath/features/extract.h"
#include "cpath/util/encoding.h"

namespace cpath::features {

std::string_view ToString(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::kSL2013: return "sl2013";
    case SpaceKind::kHidost: return "hidost";
    case SpaceKind::kPdfRateB: return "pdfrate_b";
  }
  return "?";
}

SpaceKind ParseSpaceKind(std::string_view text) {
  if (text == "sl2013") return SpaceKind::kSL2013;
  if (text == "hidost") return SpaceKind::kHidost;
  if (text == "pdfrate_b") return SpaceKind::kPdfRateB;
  throw std::invalid_argument("unknown feature space kind '" + std::string(text) + "'");
}

FeatureSpace::FeatureSpace(SpaceKind kind, std::vector<std::string> names)
    : kind_(kind), names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

std::optional<size_t> FeatureSpace::IndexOf(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<size_t>(it - names_.begin());
}

std::string FeatureSpace::ToFileText() const {
  std::string out;
  for (const auto& n : names_) {
    out += n;
    out += '\n';
  }
  return out;
}

FeatureSpace FeatureSpace::FromFileText(SpaceKind kind, std::string_view text) {
  std::vector<std::string> names;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) names.emplace_back(line);
    start = nl + 1;
  }
  return FeatureSpace(kind, std::move(names));
}

std::string FeatureSpace::Sha256() const { return Sha256Hex(ToFileText()); }

FeatureVector::FeatureVector(SpacePtr space)
    : space_(std::move(space)), bits_(space_ ? space_->size() : 0, 0) {}

FeatureVector::FeatureVector(SpacePtr space, std::vector<uint8_t> bits)
    : space_(std::move(space)), bits_(std::move(bits)) {
  if (!space_ || bits_.size() != space_->size()) {
    throw std::invalid_argument("feature vector length does not match its space");
  }
  for (uint8_t b : bits_) {
    if (b > 1) throw std::invalid_argument("feature values must be 0 or 1");
  }
}

bool FeatureVector::SameSpace(const FeatureSpace& other) const {
  return space_ && (space_.get() == &other || *space_ == other);
}

std::string FeatureVector::BitString() const {
  std::string s;
  s.reserve(bits_.size());
  for (uint8_t b : bits_) s += b ? '1' : '0';
  return s;
}

Vectorized VectorizeNames(const std::set<std::string>& names, const SpacePtr& space) {
  Vectorized out{FeatureVector(space), 0};
  for (const auto& n : names) {
    if (auto idx = space->IndexOf(n)) {
      out.vector.Set(*idx, true);
    } else {
      ++out.ignored;
    }
  }
  return out;
}

Vectorized Vectorize(const PathSet& paths, const SpacePtr& space) {
  if (space->kind() == SpaceKind::kPdfRateB) {
    throw std::invalid_argument("path vectorization needs an SL2013 or Hidost space");
  }
  return VectorizeNames(RenderAll(paths), space);
}

FeatureVector ExtractPdfRateB(const pdf::ObjectGraph& graph,
                              const std::vector<CountFeatureDef>& defs) {
  std::vector<std::string> names;
  for (const auto& d : defs) names.push_back(d.name);
  auto space = std::make_shared<FeatureSpace>(SpaceKind::kPdfRateB, names);
  if (space->size() != defs.size()) {
    throw std::invalid_argument("count feature definition names must be unique");
  }
  return VectorizeNames(BinarizedCountFeatures(graph, defs), space).vector;
}

std::set<std::string> DocumentFeatures(const pdf::ObjectGraph& graph, SpaceKind kind,
                                       const SpaceParams& params) {
  switch (kind) {
    case SpaceKind::kSL2013:
      return RenderAll(ExtractPaths(graph, params.depth_limit));
    case SpaceKind::kHidost: {
      std::set<std::string> out;
      for (const auto& p : ExtractPaths(graph, params.depth_limit)) {
        out.insert(Consolidate(p, params.rules).rendered());
      }
      return out;
    }
    case SpaceKind::kPdfRateB:
      return BinarizedCountFeatures(graph, params.count_defs);
  }
  return {};
}

FeatureSpace BuildFeatureSpace(const std::vector<pdf::ObjectGraph>& corpus,
                               SpaceKind kind, const SpaceParams& params) {
  if (corpus.empty()) throw std::invalid_argument("feature space needs a non-empty corpus");
  std::vector<std::string> names;
  if (kind == SpaceKind::kPdfRateB) {
    for (const auto& d : params.count_defs) names.push_back(d.name);
  } else {
    for (const auto& g : corpus) {
      for (auto& n : DocumentFeatures(g, kind, params)) names.push_back(n);
    }
  }
  return FeatureSpace(kind, std::move(names));
}

}  // namespace cpath::features
