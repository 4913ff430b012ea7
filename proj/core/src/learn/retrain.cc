#include "cpath/learn/retrain.h"

#include <set>
#include <string>

#include "cpath/util/parallel.h"

namespace cpath::learn {

VariantGenerator FeatureSpaceAttack(AttackConfig cfg) {
  return [cfg = std::move(cfg)](const LinearModel& model, const features::FeatureVector& seed,
                                uint64_t stream) { return RunAttack(model, seed, cfg, stream).x; };
}

RetrainResult RetrainIterative(const LinearModel& model0, const VariantGenerator& attack,
                               const std::vector<LabeledVector>& train_data,
                               const std::vector<features::FeatureVector>& seeds,
                               const RetrainConfig& cfg, const TrainOptions& train_options,
                               size_t workers) {
  RetrainResult result{model0, {}, train_data};
  if (seeds.empty()) return result;

  std::set<std::string> malicious_rows;
  for (const auto& item : result.data) {
    if (item.malicious) malicious_rows.insert(item.x.BitString());
  }
  const size_t per_iter = cfg.seeds_per_iteration == 0
                              ? seeds.size()
                              : std::min(cfg.seeds_per_iteration, seeds.size());
  size_t offset = 0;
  for (size_t it = 0; it < cfg.max_iterations; ++it) {
    std::vector<size_t> batch(per_iter);
    for (size_t k = 0; k < per_iter; ++k) batch[k] = (offset + k) % seeds.size();
    offset = (offset + per_iter) % seeds.size();

    std::vector<features::FeatureVector> variants(per_iter);
    const uint64_t base = static_cast<uint64_t>(it) * seeds.size();
    ParallelFor(per_iter, workers, [&](size_t k) {
      variants[k] = attack(result.model, seeds[batch[k]], base + batch[k]);
    });

    IterationLog entry;
    entry.iteration = it + 1;
    entry.attacked = per_iter;
    size_t detected = 0;
    std::set<std::string> fresh;
    for (const auto& v : variants) {
      detected += result.model.IsMalicious(v);
      // Several seeds may land on the same variant; each copy is kept so the
      // retrained model sees how often the attack produced it.
      const std::string key = v.BitString();
      if (!malicious_rows.count(key)) {
        fresh.insert(key);
        result.data.push_back({v, true});
        ++entry.added;
      }
    }
    malicious_rows.insert(fresh.begin(), fresh.end());
    entry.evaded = per_iter - detected;
    entry.robustness = static_cast<double>(detected) / static_cast<double>(per_iter);
    result.log.push_back(entry);

    if (entry.added == 0 && cfg.stop_when_no_new) break;
    if (entry.added > 0) result.model = Train(result.data, train_options);
  }
  return result;
}

}  // namespace cpath::learn
