#include "cpath/features/pdfrate.h"

#include <stdexcept>

#include "json.hpp"

namespace cpath::features {
namespace {

void CountIn(const pdf::Object& o, const std::map<std::string, std::vector<size_t>>& index,
             std::vector<size_t>& counts) {
  auto bump = [&](const std::string& token) {
    auto it = index.find(token);
    if (it == index.end()) return;
    for (size_t d : it->second) ++counts[d];
  };
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, pdf::Name>) {
          bump(v.token);
        } else if constexpr (std::is_same_v<T, pdf::Array>) {
          for (const auto& e : v) CountIn(e, index, counts);
        } else if constexpr (std::is_same_v<T, pdf::Dictionary>) {
          for (const auto& [k, e] : v) {
            bump(k);
            CountIn(e, index, counts);
          }
        } else if constexpr (std::is_same_v<T, pdf::Stream>) {
          for (const auto& [k, e] : v.dict) {
            bump(k);
            CountIn(e, index, counts);
          }
        }
      },
      o.value());
}

}  // namespace

std::vector<CountFeatureDef> DefaultCountFeatureDefs() {
  return {
      {"count_box_other", {"ArtBox", "BleedBox", "CropBox", "TrimBox"}, 1},
      {"count_javascript", {"JavaScript"}, 1},
      {"count_js", {"JS"}, 1},
      {"count_page", {"Page"}, 1},
  };
}

std::vector<CountFeatureDef> ParseCountFeatureDefs(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("count feature defs: ") + e.what());
  }
  if (!doc.is_array()) throw std::invalid_argument("count feature defs must be an array");
  std::vector<CountFeatureDef> defs;
  std::set<std::string> seen;
  for (const auto& item : doc) {
    CountFeatureDef def;
    if (!item.is_object() || !item.contains("name") || !item["name"].is_string() ||
        !item.contains("match") || !item["match"].is_array()) {
      throw std::invalid_argument("count feature def needs string name and match array");
    }
    def.name = item["name"].get<std::string>();
    for (const auto& m : item["match"]) {
      if (!m.is_string() || m.get<std::string>().empty()) {
        throw std::invalid_argument("count feature '" + def.name +
                                    "': match entries must be non-empty strings");
      }
      def.match.insert(m.get<std::string>());
    }
    if (def.match.empty()) {
      throw std::invalid_argument("count feature '" + def.name + "': empty match set");
    }
    if (item.contains("threshold")) {
      if (!item["threshold"].is_number_integer() || item["threshold"].get<int64_t>() < 1) {
        throw std::invalid_argument("count feature '" + def.name +
                                    "': threshold must be an integer >= 1");
      }
      def.threshold = item["threshold"].get<size_t>();
    }
    if (!seen.insert(def.name).second) {
      throw std::invalid_argument("duplicate count feature '" + def.name + "'");
    }
    defs.push_back(std::move(def));
  }
  return defs;
}

std::map<std::string, size_t> CountOccurrences(const pdf::ObjectGraph& graph,
                                               const std::vector<CountFeatureDef>& defs) {
  std::map<std::string, std::vector<size_t>> index;
  for (size_t d = 0; d < defs.size(); ++d) {
    for (const auto& token : defs[d].match) index[token].push_back(d);
  }
  std::vector<size_t> counts(defs.size(), 0);
  for (const auto& [num, obj] : graph.objects()) CountIn(obj, index, counts);
  CountIn(pdf::Object(graph.trailer()), index, counts);
  std::map<std::string, size_t> out;
  for (size_t d = 0; d < defs.size(); ++d) out[defs[d].name] = counts[d];
  return out;
}

std::set<std::string> BinarizedCountFeatures(const pdf::ObjectGraph& graph,
                                             const std::vector<CountFeatureDef>& defs) {
  const auto counts = CountOccurrences(graph, defs);
  std::set<std::string> on;
  for (const auto& def : defs) {
    if (counts.at(def.name) >= def.threshold) on.insert(def.name);
  }
  return on;
}

}  // namespace cpath::features
