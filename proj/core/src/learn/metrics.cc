#include "cpath/learn/metrics.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "cpath/util/error.h"

namespace cpath::learn {

double EvasionRobustness(const LinearModel& model,
                         const std::vector<features::FeatureVector>& attacked) {
  if (attacked.empty()) throw std::invalid_argument("no attacked samples to evaluate");
  size_t detected = 0;
  for (const auto& x : attacked) detected += model.IsMalicious(x);
  return static_cast<double>(detected) / static_cast<double>(attacked.size());
}

RocCurve RocFromScores(const std::vector<double>& scores, const std::vector<bool>& malicious) {
  if (scores.size() != malicious.size()) {
    throw std::invalid_argument("scores and labels differ in length");
  }
  const size_t pos = static_cast<size_t>(std::count(malicious.begin(), malicious.end(), true));
  const size_t neg = malicious.size() - pos;
  if (pos == 0 || neg == 0) {
    throw Error(ErrorCode::kDegenerateData, "ROC needs both malicious and benign samples");
  }
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return scores[a] > scores[b]; });

  RocCurve roc;
  roc.points.push_back({0.0, 0.0});
  size_t tp = 0;
  size_t fp = 0;
  for (size_t i = 0; i < order.size();) {
    // Everything scoring at least this threshold is called malicious.
    const double threshold = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == threshold; ++i) {
      (malicious[order[i]] ? tp : fp) += 1;
    }
    RocPoint p{static_cast<double>(fp) / static_cast<double>(neg),
               static_cast<double>(tp) / static_cast<double>(pos)};
    const RocPoint& last = roc.points.back();
    roc.auc += (p.fpr - last.fpr) * (p.tpr + last.tpr) / 2.0;
    roc.points.push_back(p);
  }
  return roc;
}

RocCurve RocAuc(const LinearModel& model, const std::vector<LabeledVector>& labeled) {
  std::vector<double> scores;
  std::vector<bool> labels;
  scores.reserve(labeled.size());
  for (const auto& item : labeled) {
    scores.push_back(model.Score(item.x));
    labels.push_back(item.malicious);
  }
  return RocFromScores(scores, labels);
}

}  // namespace cpath::learn
