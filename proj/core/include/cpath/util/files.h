#ifndef CPATH_UTIL_FILES_H_
#define CPATH_UTIL_FILES_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace cpath {

// Both throw Error{kIo} naming the path.
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view bytes);

}  // namespace cpath

#endif  // CPATH_UTIL_FILES_H_
