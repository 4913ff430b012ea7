#include "cpath/oracle/oracle.h"

namespace cpath::oracle {

std::string_view ToString(Outcome outcome) {
  return outcome == Outcome::kMalicious ? "malicious" : "benign";
}

std::string_view ToString(OracleFailure failure) {
  switch (failure) {
    case OracleFailure::kTimeout: return "Timeout";
    case OracleFailure::kProtocolViolation: return "ProtocolViolation";
    case OracleFailure::kParseFailure: return "ParseFailure";
  }
  return "?";
}

}  // namespace cpath::oracle
