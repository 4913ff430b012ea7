#ifndef CPATH_FEATURES_SPACE_H_
#define CPATH_FEATURES_SPACE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpath/features/consolidate.h"
#include "cpath/features/path.h"
#include "cpath/features/pdfrate.h"
#include "cpath/pdf/graph.h"

namespace cpath::features {

enum class SpaceKind { kSL2013, kHidost, kPdfRateB };

std::string_view ToString(SpaceKind kind);
// Throws std::invalid_argument for unknown names.
SpaceKind ParseSpaceKind(std::string_view text);

// Ordered feature universe. Names are kept sorted and unique.
class FeatureSpace {
 public:
  // Sorts and deduplicates.
  FeatureSpace(SpaceKind kind, std::vector<std::string> names);

  SpaceKind kind() const { return kind_; }
  const std::vector<std::string>& names() const { return names_; }
  size_t size() const { return names_.size(); }
  std::optional<size_t> IndexOf(std::string_view name) const;

  // One name per line, LF terminated.
  std::string ToFileText() const;
  static FeatureSpace FromFileText(SpaceKind kind, std::string_view text);
  // SHA-256 of ToFileText(), used to tie models to their space.
  std::string Sha256() const;

  friend bool operator==(const FeatureSpace& a, const FeatureSpace& b) {
    return a.kind_ == b.kind_ && a.names_ == b.names_;
  }

 private:
  SpaceKind kind_;
  std::vector<std::string> names_;
};

using SpacePtr = std::shared_ptr<const FeatureSpace>;

// Binary vector aligned with a space.
class FeatureVector {
 public:
  FeatureVector() = default;
  explicit FeatureVector(SpacePtr space);  // all zeros
  // Throws std::invalid_argument if sizes differ or a value is not 0/1.
  FeatureVector(SpacePtr space, std::vector<uint8_t> bits);

  const SpacePtr& space() const { return space_; }
  const std::vector<uint8_t>& bits() const { return bits_; }
  size_t size() const { return bits_.size(); }
  uint8_t operator[](size_t i) const { return bits_[i]; }
  void Set(size_t i, bool on) { bits_[i] = on ? 1 : 0; }
  void Flip(size_t i) { bits_[i] ^= 1; }

  // Same space contents (pointer equality not required).
  bool SameSpace(const FeatureSpace& other) const;
  std::string BitString() const;

  friend bool operator==(const FeatureVector& a, const FeatureVector& b) {
    return a.bits_ == b.bits_;
  }

 private:
  SpacePtr space_;
  std::vector<uint8_t> bits_;
};

struct Vectorized {
  FeatureVector vector;
  size_t ignored = 0;  // inputs not present in the space
};

// Bit j is set iff space.names()[j] is among the rendered paths. Only for
// path-based spaces; throws std::invalid_argument for kPdfRateB.
Vectorized Vectorize(const PathSet& paths, const SpacePtr& space);
Vectorized VectorizeNames(const std::set<std::string>& names, const SpacePtr& space);

// PDFRate-B vector over the space formed by the definition names. Throws
// std::invalid_argument on duplicate definition names.
FeatureVector ExtractPdfRateB(const pdf::ObjectGraph& graph,
                              const std::vector<CountFeatureDef>& defs);

struct SpaceParams {
  size_t depth_limit = 10;
  std::vector<ConsolidationRule> rules = DefaultConsolidationRules();
  std::vector<CountFeatureDef> count_defs = DefaultCountFeatureDefs();
};

// Feature names of one document in the given space: rendered paths for
// SL2013, consolidated paths for Hidost, names of set count features for
// PDFRate-B.
std::set<std::string> DocumentFeatures(const pdf::ObjectGraph& graph, SpaceKind kind,
                                       const SpaceParams& params);

// Sorted union over the corpus (for PDFRate-B: all definition names).
// Throws std::invalid_argument on an empty corpus.
FeatureSpace BuildFeatureSpace(const std::vector<pdf::ObjectGraph>& corpus,
                               SpaceKind kind, const SpaceParams& params);

}  // namespace cpath::features

#endif  // CPATH_FEATURES_SPACE_H_
