#ifndef CPATH_LEARN_METRICS_H_
#define CPATH_LEARN_METRICS_H_

#include <utility>
#include <vector>

#include "cpath/learn/model.h"

namespace cpath::learn {

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

struct RocCurve {
  std::vector<RocPoint> points;  // from (0,0) to (1,1), both coordinates non-decreasing
  double auc = 0.0;              // trapezoidal area under `points`
};

// Fraction of attacked vectors the model still calls malicious. Throws
// std::invalid_argument on an empty list.
double EvasionRobustness(const LinearModel& model,
                         const std::vector<features::FeatureVector>& attacked);

// Threshold sweep over the distinct scores, highest first. Throws
// Error{kDegenerateData} unless both labels occur.
RocCurve RocFromScores(const std::vector<double>& scores, const std::vector<bool>& malicious);
RocCurve RocAuc(const LinearModel& model, const std::vector<LabeledVector>& labeled);

}  // namespace cpath::learn

#endif  // CPATH_LEARN_METRICS_H_
