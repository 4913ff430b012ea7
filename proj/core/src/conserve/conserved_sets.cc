#include "cpath/conserve/conserved_sets.h"

#include <stdexcept>

#include "json.hpp"

namespace cpath::conserve {

FeatureSet ConservedSets::Probed() const {
  FeatureSet all = S;
  all.insert(O.begin(), O.end());
  all.insert(inconclusive.begin(), inconclusive.end());
  return all;
}

std::string ToJsonLine(const ConservedSets& sets) {
  nlohmann::ordered_json d = nlohmann::ordered_json::object();
  for (const auto& [feature, deps] : sets.D) {
    if (!deps.empty()) d[feature] = deps;
  }
  nlohmann::ordered_json rec;
  rec["seed"] = sets.seed_id;
  rec["S"] = sets.S;
  rec["O"] = sets.O;
  rec["inconclusive"] = sets.inconclusive;
  rec["D"] = std::move(d);
  return rec.dump();
}

ConservedSets ConservedSetsFromJson(std::string_view line) {
  using nlohmann::json;
  json rec;
  try {
    rec = json::parse(line);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("conserved sets record: ") + e.what());
  }
  auto strings = [&](const json& value, const char* what) {
    if (!value.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
    FeatureSet out;
    for (const auto& v : value) {
      if (!v.is_string()) throw std::invalid_argument(std::string(what) + " must hold strings");
      out.insert(v.get<std::string>());
    }
    return out;
  };
  if (!rec.is_object() || !rec.contains("seed") || !rec["seed"].is_string()) {
    throw std::invalid_argument("conserved sets record needs a \"seed\" string");
  }
  ConservedSets sets;
  sets.seed_id = rec["seed"].get<std::string>();
  sets.S = strings(rec.value("S", json::array()), "S");
  sets.O = strings(rec.value("O", json::array()), "O");
  sets.inconclusive = strings(rec.value("inconclusive", json::array()), "inconclusive");
  const json d = rec.value("D", json::object());
  if (!d.is_object()) throw std::invalid_argument("D must be an object");
  for (const auto& [feature, deps] : d.items()) sets.D[feature] = strings(deps, "D entry");
  return sets;
}

}  // namespace cpath::conserve
