#include "cpath/conserve/elimination.h"

#include <map>
#include <stdexcept>

#include "json.hpp"

namespace cpath::conserve {

std::string_view ToString(TraceAction action) {
  switch (action) {
    case TraceAction::kKept: return "kept";
    case TraceAction::kEliminated: return "eliminated";
    case TraceAction::kSkipped: return "skipped";
  }
  return "?";
}

UniformResult ForwardElimination(const std::vector<ConservedSets>& sets, const Rational& beta) {
  if (sets.empty()) throw std::invalid_argument("forward elimination needs at least one seed");

  UniformResult result;
  result.beta = beta;
  for (const auto& s : sets) result.S.insert(s.S.begin(), s.S.end());
  const FeatureSet initial = result.S;

  std::map<std::string, FeatureSet> merged_deps;
  for (const auto& s : sets) {
    for (const auto& [feature, deps] : s.D) merged_deps[feature].insert(deps.begin(), deps.end());
  }

  for (const auto& j : initial) {
    TraceEntry entry;
    entry.feature = j;
    for (const auto& s : sets) {
      entry.o_count += s.O.count(j);
      entry.s_count += s.S.count(j);
    }
    if (result.visited_Q.count(j)) {
      entry.action = TraceAction::kSkipped;
    } else if (beta.MultipleAtMost(entry.s_count, entry.o_count)) {
      entry.action = TraceAction::kEliminated;
      entry.removed.push_back(j);
      if (auto it = merged_deps.find(j); it != merged_deps.end()) {
        for (const auto& d : it->second) {
          if (d != j) entry.removed.push_back(d);
        }
      }
      for (const auto& r : entry.removed) {
        result.S.erase(r);
        result.visited_Q.insert(r);
      }
    }
    result.trace.push_back(std::move(entry));
  }
  for (const auto& j : initial) {
    if (!result.S.count(j)) result.eliminated.insert(j);
  }
  return result;
}

std::string UniformResultToJson(const UniformResult& result) {
  nlohmann::ordered_json trace = nlohmann::ordered_json::array();
  for (const auto& e : result.trace) {
    nlohmann::ordered_json rec;
    rec["feature"] = e.feature;
    rec["o_count"] = e.o_count;
    rec["s_count"] = e.s_count;
    rec["action"] = std::string(ToString(e.action));
    if (!e.removed.empty()) rec["removed"] = e.removed;
    trace.push_back(std::move(rec));
  }
  nlohmann::ordered_json doc;
  doc["S"] = result.S;
  doc["eliminated"] = result.eliminated;
  doc["visited_Q"] = result.visited_Q;
  doc["beta"] = result.beta.ToString();
  doc["trace"] = std::move(trace);
  return doc.dump(2) + "\n";
}

}  // namespace cpath::conserve
