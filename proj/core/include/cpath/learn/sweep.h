#ifndef CPATH_LEARN_SWEEP_H_
#define CPATH_LEARN_SWEEP_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cpath/learn/model.h"
#include "cpath/learn/train.h"

namespace cpath::learn {

struct MatchCount {
  size_t target = 0;
};
struct CoverSet {
  std::set<std::string> target;
};
using SweepMode = std::variant<MatchCount, CoverSet>;

struct SweepPoint {
  double C = 0.0;
  std::set<std::string> selected;
};

struct SweepResult {
  std::vector<SweepPoint> log;   // one entry per grid point, grid order
  std::optional<size_t> chosen;  // index into log; empty = target unreachable
};

// Trains an L1 model per grid value of C (options.reg.C is overridden) and
// records the features with |w| > threshold. The first grid point meeting
// the mode is chosen; the whole grid is always trained so the log is
// complete.
SweepResult L1Sweep(const std::vector<LabeledVector>& data, const SweepMode& mode,
                    const std::vector<double>& c_grid, TrainOptions options,
                    double threshold = 1e-6);

}  // namespace cpath::learn

#endif  // CPATH_LEARN_SWEEP_H_
