#include "cpath/oracle/rule_oracle.h"

#include <set>
#include <stdexcept>

#include "cpath/mutation/mutate.h"
#include "cpath/pdf/parser.h"
#include "json.hpp"

namespace cpath::oracle {
namespace {

bool NonEmpty(const pdf::Object& o) {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, pdf::Null>) {
          return false;
        } else if constexpr (std::is_same_v<T, pdf::Text>) {
          return !v.bytes.empty();
        } else if constexpr (std::is_same_v<T, pdf::Stream>) {
          return !v.data.empty();
        } else if constexpr (std::is_same_v<T, pdf::Array> ||
                             std::is_same_v<T, pdf::Dictionary>) {
          return !v.empty();
        } else {
          return true;
        }
      },
      o.value());
}

bool Contains(const pdf::ObjectGraph& g, const pdf::Object& o, const std::string& token,
              std::set<pdf::ObjectNumber>& chain) {
  if (o.IsReference()) {
    const pdf::ObjectNumber n = o.AsReference().number;
    const pdf::Object* target = g.Find(n);
    if (target == nullptr || chain.count(n) != 0) return false;
    chain.insert(n);
    const bool hit = Contains(g, *target, token, chain);
    chain.erase(n);
    return hit;
  }
  if (o.IsText()) return o.AsText().bytes.find(token) != std::string::npos;
  if (o.IsStream()) {
    if (o.AsStream().data.find(token) != std::string::npos) return true;
  }
  if (o.IsArray()) {
    for (const auto& e : o.AsArray()) {
      if (Contains(g, e, token, chain)) return true;
    }
  }
  if (const pdf::Dictionary* d = o.DictOrStreamDict()) {
    for (const auto& [k, v] : *d) {
      if (Contains(g, v, token, chain)) return true;
    }
  }
  return false;
}

}  // namespace

bool PredicateHolds(const pdf::ObjectGraph& graph, const pdf::Object& value,
                    const PayloadPredicate& predicate) {
  if (std::holds_alternative<AnyNonEmpty>(predicate)) {
    const pdf::Object* resolved = pdf::ResolvePtr(graph, value);
    return resolved != nullptr && NonEmpty(*resolved);
  }
  std::set<pdf::ObjectNumber> chain;
  return Contains(graph, value, std::get<ContainsToken>(predicate).token, chain);
}

std::vector<SignatureRule> ParseSignatureRules(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("signature rules: ") + e.what());
  }
  if (!doc.is_array()) throw std::invalid_argument("signature rules must be an array");
  std::vector<SignatureRule> rules;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("id") || !item["id"].is_string() ||
        !item.contains("path") || !item["path"].is_string()) {
      throw std::invalid_argument("signature rule needs string id and path");
    }
    SignatureRule rule{item["id"].get<std::string>(),
                       features::StructuralPath::Parse(item["path"].get<std::string>()),
                       AnyNonEmpty{}};
    if (item.contains("predicate")) {
      const json& p = item["predicate"];
      if (p.is_string() && p.get<std::string>() == "any_non_empty") {
        rule.predicate = AnyNonEmpty{};
      } else if (p.is_object() && p.size() == 1 && p.contains("contains") &&
                 p["contains"].is_string() && !p["contains"].get<std::string>().empty()) {
        rule.predicate = ContainsToken{p["contains"].get<std::string>()};
      } else {
        throw std::invalid_argument("rule '" + rule.id +
                                    "': predicate must be \"any_non_empty\" or "
                                    "{\"contains\": <token>}");
      }
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

RuleOracle::RuleOracle(std::vector<SignatureRule> rules) : rules_(std::move(rules)) {}

Verdict RuleOracle::EvaluateGraph(const pdf::ObjectGraph& graph) const {
  Verdict v;
  for (const auto& rule : rules_) {
    bool hit = false;
    for (const auto& site : mutation::LocateSites(graph, rule.required_path)) {
      const pdf::Object* value = mutation::ValueAt(graph, site);
      if (value != nullptr && PredicateHolds(graph, *value, rule.predicate)) {
        hit = true;
        break;
      }
    }
    if (hit) v.signatures.push_back(rule.id);
  }
  v.outcome = v.signatures.empty() ? Outcome::kBenign : Outcome::kMalicious;
  return v;
}

Verdict RuleOracle::Evaluate(std::string_view pdf_bytes) {
  const auto start = std::chrono::steady_clock::now();
  std::optional<pdf::ObjectGraph> graph;
  try {
    graph.emplace(pdf::ParsePdf(pdf_bytes));
  } catch (const Error& e) {
    throw OracleError(OracleFailure::kParseFailure, e.what());
  }
  Verdict v = EvaluateGraph(*graph);
  v.latency = std::chrono::steady_clock::now() - start;
  return v;
}

std::string RuleOracle::Describe() const {
  return "rule(" + std::to_string(rules_.size()) + " rules)";
}

}  // namespace cpath::oracle
