#ifndef CPATH_UTIL_ENCODING_H_
#define CPATH_UTIL_ENCODING_H_

#include <optional>
#include <string>
#include <string_view>

namespace cpath {

std::string Base64Encode(std::string_view bytes);
// Returns nullopt on malformed input.
std::optional<std::string> Base64Decode(std::string_view text);

// Lowercase hex SHA-256 digest.
std::string Sha256Hex(std::string_view bytes);

}  // namespace cpath

#endif  // CPATH_UTIL_ENCODING_H_
