#ifndef CPATH_ORACLE_ORACLE_H_
#define CPATH_ORACLE_ORACLE_H_

#include <chrono>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "cpath/util/error.h"

namespace cpath::oracle {

enum class Outcome { kMalicious, kBenign };

std::string_view ToString(Outcome outcome);

// Malicious exactly when at least one signature matched.
struct Verdict {
  Outcome outcome = Outcome::kBenign;
  std::vector<std::string> signatures;
  std::chrono::nanoseconds latency{0};

  bool malicious() const { return outcome == Outcome::kMalicious; }

  // Latency is measurement noise and does not take part in equality.
  friend bool operator==(const Verdict& a, const Verdict& b) {
    return a.outcome == b.outcome && a.signatures == b.signatures;
  }
};

enum class OracleFailure { kTimeout, kProtocolViolation, kParseFailure };

std::string_view ToString(OracleFailure failure);

class OracleError : public Error {
 public:
  OracleError(OracleFailure failure, const std::string& message)
      : Error(ErrorCode::kOracle,
              std::string(ToString(failure)) + ": " + message),
        failure_(failure) {}

  OracleFailure failure() const { return failure_; }

 private:
  OracleFailure failure_;
};

inline constexpr size_t kUnlimitedParallelism = std::numeric_limits<size_t>::max();

// Answers whether a PDF still exhibits malicious behaviour.
class Oracle {
 public:
  virtual ~Oracle() = default;

  // Throws OracleError.
  virtual Verdict Evaluate(std::string_view pdf) = 0;

  // How many Evaluate calls may run at once; callers must honor it.
  virtual size_t max_parallelism() const = 0;

  virtual std::string Describe() const = 0;
};

}  // namespace cpath::oracle

#endif  // CPATH_ORACLE_ORACLE_H_
