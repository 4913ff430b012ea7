#ifndef CPATH_UTIL_ERROR_H_
#define CPATH_UTIL_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace cpath {

enum class ErrorCode {
  kMalformedPdf,
  kUnsupportedConstruct,
  kSchemaViolation,
  kSerializationFailure,
  kPathAbsent,
  kOracle,
  kSeedNotMalicious,
  kDegenerateData,
  kSpaceMismatch,
  kTargetUnreachable,
  kConfig,
  kIo,
};

std::string_view ToString(ErrorCode code);

// Base class of every error raised by the library. The code is what the CLI
// maps onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cpath

#endif  // CPATH_UTIL_ERROR_H_
