#ifndef CPATH_FEATURES_CONSOLIDATE_H_
#define CPATH_FEATURES_CONSOLIDATE_H_

#include <string>
#include <string_view>
#include <vector>

#include "cpath/features/path.h"

namespace cpath::features {

// Prefix rewrite rule. A pattern "/A/B" matches paths starting with A, B and
// rewrites that prefix to the replacement. A trailing "*" ("/A/B/*") also
// absorbs any run of further components equal to the one before it, so
// "/Pages/Kids/*" matches "/Pages/Kids/Kids/Kids/..." and collapses the
// repeated Kids into the replacement.
struct ConsolidationRule {
  std::vector<std::string> pattern;  // without the trailing "*"
  bool repeat_last = false;          // pattern ended with "*"
  StructuralPath replacement;

  // "<pattern> -> <replacement>"; throws std::invalid_argument.
  static ConsolidationRule Parse(std::string_view line);
  std::string ToString() const;
};

// Applies the first matching rule (list order); unmatched paths come back
// unchanged. At most one rule fires per call.
StructuralPath Consolidate(const StructuralPath& path,
                           const std::vector<ConsolidationRule>& rules);

// Rule file: one rule per line, '#' starts a comment, blank lines ignored.
// Throws std::invalid_argument naming the line number.
std::vector<ConsolidationRule> ParseRuleFile(std::string_view text);
std::string FormatRuleFile(const std::vector<ConsolidationRule>& rules);

// Shipped default: collapses of recursive page-tree and name-tree chains.
// None of them touches a path that has no repeated Kids component.
std::vector<ConsolidationRule> DefaultConsolidationRules();

}  // namespace cpath::features

#endif  // CPATH_FEATURES_CONSOLIDATE_H_
