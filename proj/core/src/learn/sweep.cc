#include "cpath/learn/sweep.h"

#include <algorithm>
#include <stdexcept>

namespace cpath::learn {

SweepResult L1Sweep(const std::vector<LabeledVector>& data, const SweepMode& mode,
                    const std::vector<double>& c_grid, TrainOptions options, double threshold) {
  if (c_grid.empty()) throw std::invalid_argument("C grid is empty");
  SweepResult result;
  options.reg.kind = RegKind::kL1;
  for (double c : c_grid) {
    options.reg.C = c;
    const LinearModel model = Train(data, options);
    const auto names = SelectedFeatures(model, threshold);
    SweepPoint point{c, std::set<std::string>(names.begin(), names.end())};
    if (!result.chosen) {
      const bool met = std::visit(
          [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, MatchCount>) {
              return point.selected.size() == m.target;
            } else {
              return std::includes(point.selected.begin(), point.selected.end(),
                                   m.target.begin(), m.target.end());
            }
          },
          mode);
      if (met) result.chosen = result.log.size();
    }
    result.log.push_back(std::move(point));
  }
  return result;
}

}  // namespace cpath::learn
