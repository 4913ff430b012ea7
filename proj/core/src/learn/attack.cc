#include "cpath/learn/attack.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "cpath/util/parallel.h"

namespace cpath::learn {
namespace {

std::vector<size_t> FreeCoordinates(const std::vector<bool>& frozen, size_t d) {
  if (!frozen.empty() && frozen.size() != d) {
    throw std::invalid_argument("frozen mask does not match the feature space");
  }
  std::vector<size_t> free;
  for (size_t j = 0; j < d; ++j) {
    if (frozen.empty() || !frozen[j]) free.push_back(j);
  }
  return free;
}

size_t Distance(const features::FeatureVector& a, const features::FeatureVector& b) {
  size_t n = 0;
  for (size_t j = 0; j < a.size(); ++j) n += a[j] != b[j];
  return n;
}

AttackResult Finish(const LinearModel& model, const features::FeatureVector& x,
                    features::FeatureVector out, double q) {
  AttackResult r;
  r.score = model.Score(out);
  r.q = q;
  r.evaded = r.score < 0.0;
  r.flips = Distance(x, out);
  r.x = std::move(out);
  return r;
}

}  // namespace

std::vector<bool> FrozenMask(const features::FeatureSpace& space,
                             const std::set<std::string>& frozen) {
  std::vector<bool> mask(space.size(), false);
  for (const auto& name : frozen) {
    auto idx = space.IndexOf(name);
    if (!idx) throw std::invalid_argument("frozen feature \"" + name + "\" is not in the space");
    mask[*idx] = true;
  }
  return mask;
}

double GreedyObjective(const LinearModel& model, const features::FeatureVector& original,
                       const features::FeatureVector& candidate, double lambda) {
  return model.Score(candidate) + lambda * static_cast<double>(Distance(original, candidate));
}

AttackResult CoordinateGreedy(const LinearModel& model, const features::FeatureVector& x,
                              const CoordinateGreedyParams& params,
                              const std::vector<bool>& frozen, uint64_t rng_seed) {
  const auto& w = model.weights();
  const std::vector<size_t> free = FreeCoordinates(frozen, w.size());
  std::mt19937_64 rng(rng_seed);

  features::FeatureVector best = x;
  double best_q = GreedyObjective(model, x, x, params.lambda);
  const size_t restarts = std::max<size_t>(1, params.restarts);

  for (size_t r = 0; r < restarts; ++r) {
    features::FeatureVector cur = x;
    double q = GreedyObjective(model, x, cur, params.lambda);
    std::vector<size_t> order = free;
    std::shuffle(order.begin(), order.end(), rng);
    for (size_t sweep = 0; sweep < params.max_sweeps; ++sweep) {
      double best_delta = 0.0;
      size_t pick = SIZE_MAX;
      for (size_t j : order) {
        // Flipping j moves f by +-w_j and the cost by +-lambda.
        const double df = cur[j] ? -w[j] : w[j];
        const double dc = cur[j] != x[j] ? -params.lambda : params.lambda;
        if (df + dc < best_delta) {
          best_delta = df + dc;
          pick = j;
        }
      }
      if (pick == SIZE_MAX) break;
      cur.Flip(pick);
      q += best_delta;
    }
    // Recompute to avoid drift from the incremental updates.
    q = GreedyObjective(model, x, cur, params.lambda);
    if (q < best_q) {
      best_q = q;
      best = cur;
    }
  }
  return Finish(model, x, std::move(best), best_q);
}

AttackResult SaltPepper(const LinearModel& model, const features::FeatureVector& x,
                        const SaltPepperParams& params, const std::vector<bool>& frozen,
                        uint64_t rng_seed) {
  std::vector<size_t> free = FreeCoordinates(frozen, model.weights().size());
  std::mt19937_64 rng(rng_seed);
  features::FeatureVector cur = x;
  size_t spent = 0;
  const size_t draw = std::max<size_t>(1, params.draw_size);
  bool evaded = model.Score(cur) < 0.0;
  for (size_t d = 0; d < params.max_draws && !evaded && spent < params.epsilon && !free.empty(); ++d) {
    // Partial Fisher-Yates: the first k entries become the batch.
    const size_t k = std::min({draw, free.size(), params.epsilon - spent});
    for (size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<size_t> pick(i, free.size() - 1);
      std::swap(free[i], free[pick(rng)]);
    }
    for (size_t i = 0; i < k && !evaded; ++i) {
      cur.Flip(free[i]);
      ++spent;
      evaded = model.Score(cur) < 0.0;
    }
  }
  const double s = model.Score(cur);
  return Finish(model, x, std::move(cur), s);
}

AttackResult RunAttack(const LinearModel& model, const features::FeatureVector& x,
                       const AttackConfig& cfg, uint64_t stream) {
  const std::vector<bool> mask = FrozenMask(*model.space(), cfg.frozen);
  const uint64_t seed = cfg.rng_seed + stream;
  if (const auto* cg = std::get_if<CoordinateGreedyParams>(&cfg.kind)) {
    return CoordinateGreedy(model, x, *cg, mask, seed);
  }
  return SaltPepper(model, x, std::get<SaltPepperParams>(cfg.kind), mask, seed);
}

std::vector<AttackResult> AttackAll(const LinearModel& model,
                                    const std::vector<features::FeatureVector>& xs,
                                    const AttackConfig& cfg, size_t workers) {
  std::vector<AttackResult> out(xs.size());
  ParallelFor(xs.size(), workers, [&](size_t i) { out[i] = RunAttack(model, xs[i], cfg, i); });
  return out;
}

}  // namespace cpath::learn
