#ifndef CPATH_LEARN_ATTACK_H_
#define CPATH_LEARN_ATTACK_H_

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cpath/learn/model.h"

namespace cpath::learn {

inline constexpr double kDefaultLambda = 0.005;
inline constexpr size_t kDefaultEpsilon = 1000;

struct CoordinateGreedyParams {
  double lambda = kDefaultLambda;
  size_t max_sweeps = 100;  // at most one flip per sweep
  size_t restarts = 8;
};

struct SaltPepperParams {
  size_t epsilon = kDefaultEpsilon;  // total flip budget
  size_t max_draws = kDefaultEpsilon;
  size_t draw_size = 1;  // coordinates drawn per batch, without replacement
};

struct AttackConfig {
  std::variant<CoordinateGreedyParams, SaltPepperParams> kind;
  std::set<std::string> frozen;  // feature names the attack may not modify
  uint64_t rng_seed = 0;
};

struct AttackResult {
  features::FeatureVector x;
  double score = 0.0;
  double q = 0.0;        // objective value for coordinate greedy, else score
  bool evaded = false;   // score < 0
  size_t flips = 0;      // coordinates differing from the input
};

// Mask aligned with the model's space. Throws std::invalid_argument for
// frozen names outside the space.
std::vector<bool> FrozenMask(const features::FeatureSpace& space,
                             const std::set<std::string>& frozen);

// Q(x') = f(x') + lambda * sum_j (x'_j - x_j)^2.
double GreedyObjective(const LinearModel& model, const features::FeatureVector& original,
                       const features::FeatureVector& candidate, double lambda);

// Local search on Q: each sweep flips the single free coordinate with the
// largest strict decrease of Q (ties go to the first coordinate in a random
// order) and the search stops at a local minimum or after max_sweeps.
// Every restart starts at x with a fresh random order. The lowest-Q result
// is returned; Q never exceeds Q(x).
AttackResult CoordinateGreedy(const LinearModel& model, const features::FeatureVector& x,
                              const CoordinateGreedyParams& params,
                              const std::vector<bool>& frozen, uint64_t rng_seed);

// Flips randomly drawn free coordinates until the model calls the vector
// benign, epsilon flips were spent or max_draws batches were drawn.
AttackResult SaltPepper(const LinearModel& model, const features::FeatureVector& x,
                        const SaltPepperParams& params, const std::vector<bool>& frozen,
                        uint64_t rng_seed);

// Dispatches on cfg.kind, using cfg.rng_seed + stream as the random seed.
AttackResult RunAttack(const LinearModel& model, const features::FeatureVector& x,
                       const AttackConfig& cfg, uint64_t stream = 0);

// Attacks every vector in parallel; vector i uses stream i.
std::vector<AttackResult> AttackAll(const LinearModel& model,
                                    const std::vector<features::FeatureVector>& xs,
                                    const AttackConfig& cfg, size_t workers = 1);

}  // namespace cpath::learn

#endif  // CPATH_LEARN_ATTACK_H_
