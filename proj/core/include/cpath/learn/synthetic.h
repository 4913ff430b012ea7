#ifndef CPATH_LEARN_SYNTHETIC_H_
#define CPATH_LEARN_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "cpath/learn/model.h"

namespace cpath::learn {

struct SyntheticData {
  features::SpacePtr space;
  std::vector<LabeledVector> train;
  std::vector<LabeledVector> test;
  // Evasion toy: the conserved features. Signal data set: the signal features.
  std::set<std::string> marked;
};

// Binary data with three feature groups: conserved features present in
// nearly every malicious sample, weaker malicious indicators, and features
// typical of benign samples. Classes are balanced.
SyntheticData EvasionToy(uint64_t seed, size_t per_class = 200);

// Balanced data where `signal` features correlate with the label and the
// remaining ones are label-independent coin flips.
SyntheticData SignalDataset(uint64_t seed, size_t per_class = 200, size_t num_features = 10,
                            size_t signal = 3);

}  // namespace cpath::learn

#endif  // CPATH_LEARN_SYNTHETIC_H_
