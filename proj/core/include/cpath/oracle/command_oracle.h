#ifndef CPATH_ORACLE_COMMAND_ORACLE_H_
#define CPATH_ORACLE_COMMAND_ORACLE_H_

#include <chrono>
#include <string>
#include <string_view>

#include "cpath/oracle/oracle.h"

namespace cpath::oracle {

inline constexpr std::chrono::seconds kDefaultCommandTimeout{60};

// Runs `<program> <pdf-path>` for each evaluation. The program must print
// {"verdict":"malicious"|"benign","signatures":[...]} and exit 0.
class CommandOracle final : public Oracle {
 public:
  explicit CommandOracle(std::string program,
                         std::chrono::milliseconds timeout = kDefaultCommandTimeout,
                         size_t max_parallelism = 1);

  Verdict Evaluate(std::string_view pdf) override;
  size_t max_parallelism() const override { return max_parallelism_; }
  std::string Describe() const override;

 private:
  std::string program_;
  std::chrono::milliseconds timeout_;
  size_t max_parallelism_;
};

// Parses the program's stdout; throws OracleError(kProtocolViolation).
Verdict ParseCommandOutput(std::string_view output);

}  // namespace cpath::oracle

#endif  // CPATH_ORACLE_COMMAND_ORACLE_H_
