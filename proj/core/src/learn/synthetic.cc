#include "cpath/learn/synthetic.h"

#include <random>
#include <stdexcept>

namespace cpath::learn {
namespace {

struct Group {
  std::string prefix;
  size_t count;
  double p_malicious;
  double p_benign;
};

std::string Indexed(const std::string& prefix, size_t i) {
  return prefix + (i < 10 ? "0" : "") + std::to_string(i);
}

SyntheticData Generate(uint64_t seed, size_t per_class, const std::vector<Group>& groups) {
  std::vector<std::string> names;
  for (const auto& g : groups) {
    for (size_t i = 0; i < g.count; ++i) names.push_back(Indexed(g.prefix, i));
  }
  SyntheticData data;
  data.space = std::make_shared<const features::FeatureSpace>(features::SpaceKind::kSL2013, names);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto sample = [&](bool malicious) {
    features::FeatureVector x(data.space);
    for (const auto& g : groups) {
      const double p = malicious ? g.p_malicious : g.p_benign;
      for (size_t i = 0; i < g.count; ++i) {
        const bool on = unit(rng) < p;
        if (on) x.Set(*data.space->IndexOf(Indexed(g.prefix, i)), true);
      }
    }
    return LabeledVector{std::move(x), malicious};
  };
  for (auto* split : {&data.train, &data.test}) {
    for (size_t i = 0; i < per_class; ++i) {
      split->push_back(sample(true));
      split->push_back(sample(false));
    }
  }
  return data;
}

}  // namespace

SyntheticData EvasionToy(uint64_t seed, size_t per_class) {
  if (per_class == 0) throw std::invalid_argument("per_class must be positive");
  SyntheticData data = Generate(seed, per_class,
                                {{"conserved_", 4, 0.97, 0.03},
                                 {"indicator_", 8, 0.6, 0.15},
                                 {"benign_", 8, 0.15, 0.5}});
  for (size_t i = 0; i < 4; ++i) data.marked.insert(Indexed("conserved_", i));
  return data;
}

SyntheticData SignalDataset(uint64_t seed, size_t per_class, size_t num_features, size_t signal) {
  if (per_class == 0 || signal > num_features) {
    throw std::invalid_argument("invalid signal data set shape");
  }
  SyntheticData data = Generate(seed, per_class,
                                {{"signal_", signal, 0.85, 0.15},
                                 {"noise_", num_features - signal, 0.5, 0.5}});
  for (size_t i = 0; i < signal; ++i) data.marked.insert(Indexed("signal_", i));
  return data;
}

}  // namespace cpath::learn
