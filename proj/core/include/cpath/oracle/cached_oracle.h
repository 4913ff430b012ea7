#ifndef CPATH_ORACLE_CACHED_ORACLE_H_
#define CPATH_ORACLE_CACHED_ORACLE_H_

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "cpath/oracle/oracle.h"

namespace cpath::oracle {

// Verdicts keyed by the SHA-256 of the exact PDF bytes. Persisted as JSON
// Lines: {"sha256": <hex>, "verdict": "malicious"|"benign", "signatures": [...]}.
class VerdictStore {
 public:
  // Throws std::invalid_argument naming the offending line.
  static VerdictStore FromJsonl(std::string_view text);
  std::string ToJsonl() const;

  const Verdict* Find(const std::string& sha256) const;
  void Put(const std::string& sha256, const Verdict& verdict);
  size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, Verdict> entries_;
};

// Replays stored verdicts. In strict mode a miss is a ProtocolViolation; in
// permissive mode misses go to the wrapped oracle and the answer is recorded.
class CachedOracle final : public Oracle {
 public:
  CachedOracle(VerdictStore store, bool strict, std::shared_ptr<Oracle> fallback = nullptr);

  Verdict Evaluate(std::string_view pdf) override;
  size_t max_parallelism() const override;
  std::string Describe() const override;

  VerdictStore Snapshot() const;
  size_t hits() const;
  size_t misses() const;

 private:
  mutable std::mutex mu_;
  VerdictStore store_;
  bool strict_;
  std::shared_ptr<Oracle> fallback_;
  size_t hits_ = 0;
  size_t misses_ = 0;
};

}  // namespace cpath::oracle

#endif  // CPATH_ORACLE_CACHED_ORACLE_H_
