#ifndef CPATH_ORACLE_RULE_ORACLE_H_
#define CPATH_ORACLE_RULE_ORACLE_H_

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cpath/features/extract.h"
#include "cpath/features/path.h"
#include "cpath/oracle/oracle.h"
#include "cpath/pdf/graph.h"

namespace cpath::oracle {

// Satisfied by a value that carries content: non-empty text, stream
// payload, array or dictionary; any name, number or boolean. Null is empty.
struct AnyNonEmpty {
  friend bool operator==(const AnyNonEmpty&, const AnyNonEmpty&) = default;
};

// Satisfied when the raw bytes of some text or stream payload inside the
// value (references followed) contain the token. Payloads are not decoded.
struct ContainsToken {
  std::string token;
  friend bool operator==(const ContainsToken&, const ContainsToken&) = default;
};

using PayloadPredicate = std::variant<AnyNonEmpty, ContainsToken>;

struct SignatureRule {
  std::string id;
  features::StructuralPath required_path;
  PayloadPredicate predicate;
};

// JSON array of {"id", "path", "predicate"} where predicate is
// "any_non_empty" or {"contains": "<token>"}. Throws std::invalid_argument.
std::vector<SignatureRule> ParseSignatureRules(std::string_view json_text);

// Deterministic surrogate for a sandbox: a document is malicious when some
// rule's path is present and the value stored there satisfies the rule's
// predicate. Signatures are reported in rule order.
class RuleOracle final : public Oracle {
 public:
  explicit RuleOracle(std::vector<SignatureRule> rules);

  Verdict Evaluate(std::string_view pdf) override;
  Verdict EvaluateGraph(const pdf::ObjectGraph& graph) const;

  size_t max_parallelism() const override { return kUnlimitedParallelism; }
  std::string Describe() const override;

  const std::vector<SignatureRule>& rules() const { return rules_; }

 private:
  std::vector<SignatureRule> rules_;
};

// True when `predicate` holds on `value` resolved within `graph`.
bool PredicateHolds(const pdf::ObjectGraph& graph, const pdf::Object& value,
                    const PayloadPredicate& predicate);

}  // namespace cpath::oracle

#endif  // CPATH_ORACLE_RULE_ORACLE_H_
