#ifndef CPATH_LEARN_MODEL_H_
#define CPATH_LEARN_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cpath/features/space.h"

namespace cpath::learn {

enum class RegKind { kL1, kL2 };

std::string_view ToString(RegKind kind);
RegKind ParseRegKind(std::string_view text);  // "l1" | "l2"

// Larger C means weaker regularization.
struct Regularization {
  RegKind kind = RegKind::kL2;
  double C = 1.0;

  friend bool operator==(const Regularization&, const Regularization&) = default;
};

struct LabeledVector {
  features::FeatureVector x;
  bool malicious = false;
};

// f(x) = w.x + b; f(x) >= 0 is a malicious decision.
class LinearModel {
 public:
  LinearModel() = default;
  // Throws std::invalid_argument if the weight count differs from the space.
  LinearModel(features::SpacePtr space, std::vector<double> weights, double bias,
              Regularization reg);

  const features::SpacePtr& space() const { return space_; }
  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  const Regularization& reg() const { return reg_; }

  // Throws Error{kSpaceMismatch} when x is aligned to a different space.
  double Score(const features::FeatureVector& x) const;
  bool IsMalicious(const features::FeatureVector& x) const { return Score(x) >= 0.0; }

  // {"space_sha256", "weights", "bias", "reg": {"kind", "C"}}
  std::string ToJson() const;
  // Throws Error{kSpaceMismatch} if the recorded hash is not space's hash,
  // std::invalid_argument on schema problems.
  static LinearModel FromJson(std::string_view text, features::SpacePtr space);

  friend bool operator==(const LinearModel& a, const LinearModel& b) {
    return a.weights_ == b.weights_ && a.bias_ == b.bias_ && a.reg_ == b.reg_;
  }

 private:
  features::SpacePtr space_;
  std::vector<double> weights_;
  double bias_ = 0.0;
  Regularization reg_;
};

// Features whose weight magnitude exceeds `threshold`.
std::vector<std::string> SelectedFeatures(const LinearModel& model, double threshold = 1e-6);

}  // namespace cpath::learn

#endif  // CPATH_LEARN_MODEL_H_
