#include "cpath/util/error.h"

namespace cpath {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedPdf: return "MalformedPdf";
    case ErrorCode::kUnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kSerializationFailure: return "SerializationFailure";
    case ErrorCode::kPathAbsent: return "PathAbsent";
    case ErrorCode::kOracle: return "OracleError";
    case ErrorCode::kSeedNotMalicious: return "SeedNotMalicious";
    case ErrorCode::kDegenerateData: return "DegenerateData";
    case ErrorCode::kSpaceMismatch: return "SpaceMismatch";
    case ErrorCode::kTargetUnreachable: return "TargetUnreachable";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace cpath
