#ifndef CPATH_LEARN_RETRAIN_H_
#define CPATH_LEARN_RETRAIN_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "cpath/learn/attack.h"
#include "cpath/learn/model.h"
#include "cpath/learn/train.h"

namespace cpath::learn {

struct RetrainConfig {
  size_t max_iterations = 5;
  size_t seeds_per_iteration = 0;  // 0 = every seed each iteration
  bool stop_when_no_new = true;
};

// Produces an attacked variant of `seed` against `model`; `stream` selects
// an independent random stream. Feature-space attacks and problem-space
// generators both fit this shape.
using VariantGenerator = std::function<features::FeatureVector(
    const LinearModel& model, const features::FeatureVector& seed, uint64_t stream)>;

VariantGenerator FeatureSpaceAttack(AttackConfig cfg);

struct IterationLog {
  size_t iteration = 0;  // 1-based
  size_t attacked = 0;
  size_t evaded = 0;     // variants the pre-retraining model called benign
  size_t added = 0;      // variants absent from the malicious rows before this iteration
  double robustness = 0.0;  // of the pre-retraining model on the variants
};

struct RetrainResult {
  LinearModel model;
  std::vector<IterationLog> log;
  std::vector<LabeledVector> data;  // final training data
};

// Each iteration attacks a batch of seeds with the current model, appends
// the new variants as malicious rows and retrains from scratch with
// `train_options`. Stops after max_iterations, or early when
// stop_when_no_new is set and no variant was new.
RetrainResult RetrainIterative(const LinearModel& model0, const VariantGenerator& attack,
                               const std::vector<LabeledVector>& train_data,
                               const std::vector<features::FeatureVector>& seeds,
                               const RetrainConfig& cfg, const TrainOptions& train_options,
                               size_t workers = 1);

}  // namespace cpath::learn

#endif  // CPATH_LEARN_RETRAIN_H_
