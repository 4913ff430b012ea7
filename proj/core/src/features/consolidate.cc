#include "cpath/features/consolidate.h"

#include <optional>
#include <stdexcept>

namespace cpath::features {
namespace {

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Number of path components consumed by the rule, if it matches.
std::optional<size_t> MatchLength(const ConsolidationRule& rule,
                                  const StructuralPath& path) {
  const auto& comps = path.components();
  const auto& pat = rule.pattern;
  if (comps.size() < pat.size()) return std::nullopt;
  for (size_t i = 0; i < pat.size(); ++i) {
    if (comps[i] != pat[i]) return std::nullopt;
  }
  size_t n = pat.size();
  if (rule.repeat_last) {
    while (n < comps.size() && comps[n] == pat.back()) ++n;
  }
  return n;
}

}  // namespace

ConsolidationRule ConsolidationRule::Parse(std::string_view line) {
  const size_t arrow = line.find("->");
  if (arrow == std::string_view::npos) {
    throw std::invalid_argument("rule needs '<pattern> -> <replacement>'");
  }
  std::string_view lhs = Trim(line.substr(0, arrow));
  const std::string_view rhs = Trim(line.substr(arrow + 2));
  ConsolidationRule rule;
  if (lhs.size() >= 2 && lhs.substr(lhs.size() - 2) == "/*") {
    rule.repeat_last = true;
    lhs.remove_suffix(2);
  }
  rule.pattern = StructuralPath::Parse(lhs).components();
  rule.replacement = StructuralPath::Parse(rhs);
  return rule;
}

std::string ConsolidationRule::ToString() const {
  std::string s = StructuralPath(pattern).rendered();
  if (repeat_last) s += "/*";
  return s + " -> " + replacement.rendered();
}

StructuralPath Consolidate(const StructuralPath& path,
                           const std::vector<ConsolidationRule>& rules) {
  for (const auto& rule : rules) {
    auto n = MatchLength(rule, path);
    if (!n) continue;
    std::vector<std::string> out = rule.replacement.components();
    const auto& comps = path.components();
    out.insert(out.end(), comps.begin() + static_cast<std::ptrdiff_t>(*n), comps.end());
    return StructuralPath(std::move(out));
  }
  return path;
}

std::vector<ConsolidationRule> ParseRuleFile(std::string_view text) {
  std::vector<ConsolidationRule> rules;
  size_t line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : nl - start);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      // '#' only starts a comment at the beginning of a token.
      if (hash == 0 || line[hash - 1] == ' ' || line[hash - 1] == '\t') {
        line = line.substr(0, hash);
      }
    }
    line = Trim(line);
    if (!line.empty()) {
      try {
        rules.push_back(ConsolidationRule::Parse(line));
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("rule file line " + std::to_string(line_no) +
                                    ": " + e.what());
      }
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return rules;
}

std::string FormatRuleFile(const std::vector<ConsolidationRule>& rules) {
  std::string out;
  for (const auto& r : rules) out += r.ToString() + "\n";
  return out;
}

std::vector<ConsolidationRule> DefaultConsolidationRules() {
  return ParseRuleFile(
      "/Pages/Kids/* -> /Pages/Kids\n"
      "/Names/Dests/Kids/* -> /Names/Dests/Kids\n"
      "/Names/EmbeddedFiles/Kids/* -> /Names/EmbeddedFiles/Kids\n"
      "/Names/JavaScript/Kids/* -> /Names/JavaScript/Kids\n");
}

}  // namespace cpath::features
