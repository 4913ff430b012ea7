#include "cpath/oracle/cached_oracle.h"

#include <stdexcept>

#include "cpath/util/encoding.h"
#include "json.hpp"

namespace cpath::oracle {

VerdictStore VerdictStore::FromJsonl(std::string_view text) {
  using nlohmann::json;
  VerdictStore store;
  size_t line_no = 0;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    auto fail = [&](const std::string& what) {
      throw std::invalid_argument("verdict store line " + std::to_string(line_no) + ": " + what);
    };
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(e.what());
    }
    if (!rec.is_object() || !rec.contains("sha256") || !rec["sha256"].is_string() ||
        !rec.contains("verdict") || !rec["verdict"].is_string()) {
      fail("needs sha256 and verdict strings");
    }
    Verdict v;
    const std::string verdict = rec["verdict"].get<std::string>();
    if (verdict == "malicious") {
      v.outcome = Outcome::kMalicious;
    } else if (verdict != "benign") {
      fail("verdict must be malicious or benign");
    }
    if (rec.contains("signatures")) {
      if (!rec["signatures"].is_array()) fail("signatures must be an array");
      for (const auto& s : rec["signatures"]) {
        if (!s.is_string()) fail("signatures must be strings");
        v.signatures.push_back(s.get<std::string>());
      }
    }
    if (v.malicious() != !v.signatures.empty()) {
      fail("malicious verdicts need signatures and benign ones must have none");
    }
    store.Put(rec["sha256"].get<std::string>(), v);
  }
  return store;
}

std::string VerdictStore::ToJsonl() const {
  std::string out;
  for (const auto& [sha, v] : entries_) {
    nlohmann::json rec{{"sha256", sha},
                       {"verdict", std::string(ToString(v.outcome))},
                       {"signatures", v.signatures}};
    out += rec.dump() + "\n";
  }
  return out;
}

const Verdict* VerdictStore::Find(const std::string& sha256) const {
  auto it = entries_.find(sha256);
  return it == entries_.end() ? nullptr : &it->second;
}

void VerdictStore::Put(const std::string& sha256, const Verdict& verdict) {
  Verdict v = verdict;
  v.latency = std::chrono::nanoseconds(0);
  entries_.insert_or_assign(sha256, std::move(v));
}

CachedOracle::CachedOracle(VerdictStore store, bool strict, std::shared_ptr<Oracle> fallback)
    : store_(std::move(store)), strict_(strict), fallback_(std::move(fallback)) {
  if (!strict_ && !fallback_) {
    throw std::invalid_argument("permissive cache oracle needs a fallback oracle");
  }
}

Verdict CachedOracle::Evaluate(std::string_view pdf) {
  const auto start = std::chrono::steady_clock::now();
  const std::string sha = Sha256Hex(pdf);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (const Verdict* v = store_.Find(sha)) {
      ++hits_;
      Verdict out = *v;
      out.latency = std::chrono::steady_clock::now() - start;
      return out;
    }
    ++misses_;
    if (strict_) {
      throw OracleError(OracleFailure::kProtocolViolation,
                        "cache miss in strict mode for sha256 " + sha);
    }
  }
  Verdict v = fallback_->Evaluate(pdf);
  std::lock_guard<std::mutex> lock(mu_);
  store_.Put(sha, v);
  return v;
}

size_t CachedOracle::max_parallelism() const {
  return strict_ ? kUnlimitedParallelism : fallback_->max_parallelism();
}

std::string CachedOracle::Describe() const {
  return std::string("cache(") + (strict_ ? "strict" : "permissive") +
         (fallback_ ? ", " + fallback_->Describe() : std::string()) + ")";
}

VerdictStore CachedOracle::Snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return store_;
}

size_t CachedOracle::hits() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hits_;
}

size_t CachedOracle::misses() const {
  std::lock_guard<std::mutex> lock(mu_);
  return misses_;
}

}  // namespace cpath::oracle
