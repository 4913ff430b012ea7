#include "cpath/features/path.h"

#include <stdexcept>

namespace cpath::features {
namespace {

std::string EscapeComponent(const std::string& c) {
  std::string out;
  for (char ch : c) {
    if (ch == '/') {
      out += "#2F";
    } else if (ch == '#') {
      out += "#23";
    } else {
      out += ch;
    }
  }
  return out;
}

std::string UnescapeComponent(std::string_view c) {
  std::string out;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == '#' && c.substr(i, 3) == "#2F") {
      out += '/';
      i += 2;
    } else if (c[i] == '#' && c.substr(i, 3) == "#23") {
      out += '#';
      i += 2;
    } else {
      out += c[i];
    }
  }
  return out;
}

}  // namespace

StructuralPath::StructuralPath(std::vector<std::string> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("structural path needs at least one component");
  }
  for (const auto& c : components_) {
    if (c.empty()) throw std::invalid_argument("empty structural path component");
    rendered_ += '/';
    rendered_ += EscapeComponent(c);
  }
}

StructuralPath StructuralPath::Parse(std::string_view text) {
  if (text.size() < 2 || text.front() != '/') {
    throw std::invalid_argument("structural path must look like /A/B: '" +
                                std::string(text) + "'");
  }
  std::vector<std::string> parts;
  size_t start = 1;
  while (true) {
    const size_t slash = text.find('/', start);
    const std::string_view piece =
        text.substr(start, slash == std::string_view::npos ? std::string_view::npos
                                                           : slash - start);
    if (piece.empty()) {
      throw std::invalid_argument("empty component in structural path '" +
                                  std::string(text) + "'");
    }
    parts.push_back(UnescapeComponent(piece));
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  return StructuralPath(std::move(parts));
}

StructuralPath StructuralPath::Child(std::string component) const {
  std::vector<std::string> parts = components_;
  parts.push_back(std::move(component));
  return StructuralPath(std::move(parts));
}

bool StructuralPath::IsStrictPrefixOf(const StructuralPath& other) const {
  if (components_.size() >= other.components_.size()) return false;
  for (size_t i = 0; i < components_.size(); ++i) {
    if (components_[i] != other.components_[i]) return false;
  }
  return true;
}

std::set<std::string> RenderAll(const PathSet& paths) {
  std::set<std::string> out;
  for (const auto& p : paths) out.insert(p.rendered());
  return out;
}

}  // namespace cpath::features
