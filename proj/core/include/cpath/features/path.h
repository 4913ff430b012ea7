#ifndef CPATH_FEATURES_PATH_H_
#define CPATH_FEATURES_PATH_H_

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cpath::features {

// Sequence of dictionary keys leading from the document catalog to an
// object. Rendered as "/A/B/C"; '/' and '#' inside a component are written
// as #2F and #23 so Parse(Render()) is the identity.
class StructuralPath {
 public:
  StructuralPath() = default;
  // Throws std::invalid_argument on an empty list or empty component.
  explicit StructuralPath(std::vector<std::string> components);

  // Throws std::invalid_argument unless text is "/" followed by one or more
  // non-empty components.
  static StructuralPath Parse(std::string_view text);

  const std::vector<std::string>& components() const { return components_; }
  size_t size() const { return components_.size(); }
  const std::string& rendered() const { return rendered_; }

  StructuralPath Child(std::string component) const;
  // True when this path is a strict prefix of `other`.
  bool IsStrictPrefixOf(const StructuralPath& other) const;

  friend bool operator==(const StructuralPath& a, const StructuralPath& b) {
    return a.rendered_ == b.rendered_;
  }
  friend std::strong_ordering operator<=>(const StructuralPath& a,
                                          const StructuralPath& b) {
    return a.rendered_ <=> b.rendered_;
  }

 private:
  std::vector<std::string> components_;
  std::string rendered_;
};

using PathSet = std::set<StructuralPath>;

std::set<std::string> RenderAll(const PathSet& paths);

}  // namespace cpath::features

#endif  // CPATH_FEATURES_PATH_H_
