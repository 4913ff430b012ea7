#ifndef CPATH_LEARN_TRAIN_H_
#define CPATH_LEARN_TRAIN_H_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cpath/learn/model.h"

namespace cpath::learn {

enum class StepSchedule { kConstant, kInverseSqrt };

std::string_view ToString(StepSchedule schedule);
StepSchedule ParseStepSchedule(std::string_view text);  // "constant" | "inverse_sqrt"

struct TrainOptions {
  Regularization reg;
  size_t epochs = 300;
  double step = 0.5;
  StepSchedule schedule = StepSchedule::kInverseSqrt;
  size_t batch_size = 0;  // 0 = whole data set per update
  uint64_t rng_seed = 0;
};

// Mean hinge loss plus R(w) / (C * n), with R the L1 norm or half the
// squared L2 norm. The bias is not regularized.
double Objective(const std::vector<LabeledVector>& data, const std::vector<double>& weights,
                 double bias, const Regularization& reg);

// Proximal subgradient descent on Objective: a hinge subgradient step on
// each mini-batch followed by the regularizer's proximal map (soft
// thresholding for L1, shrinkage for L2). Returns the iterate with the
// lowest objective seen at an epoch boundary. Deterministic for a given
// rng_seed. Throws Error{kDegenerateData} when a class is missing and
// std::invalid_argument on empty or mixed-space data.
LinearModel Train(const std::vector<LabeledVector>& data, const TrainOptions& options);

}  // namespace cpath::learn

#endif  // CPATH_LEARN_TRAIN_H_
