#ifndef CPATH_PDF_GRAPH_H_
#define CPATH_PDF_GRAPH_H_

#include <map>
#include <string_view>
#include <vector>

#include "cpath/pdf/object.h"

namespace cpath::pdf {

enum class Provenance { kParsedPdf, kLoadedJson, kMutated };

std::string_view ToString(Provenance p);

// A PDF document as numbered objects plus a trailer. Constructing a graph
// checks that trailer/Root is a reference resolving to a dictionary and
// throws Error{kMalformedPdf} otherwise. References that do not resolve are
// allowed and listed by DanglingReferences(). Every numbered stream gets a
// direct /Length equal to its payload size, whatever the source said.
class ObjectGraph {
 public:
  using ObjectMap = std::map<ObjectNumber, Object>;

  ObjectGraph(ObjectMap objects, Dictionary trailer, Provenance provenance);

  const ObjectMap& objects() const { return objects_; }
  const Dictionary& trailer() const { return trailer_; }
  Provenance provenance() const { return provenance_; }

  ObjectNumber root_number() const { return root_; }
  const Dictionary& catalog() const;

  // nullptr when the number is not in the body.
  const Object* Find(ObjectNumber number) const;

  // Every reference in objects or trailer whose target is absent, in
  // traversal order (object number, then container order).
  std::vector<Reference> DanglingReferences() const;

  ObjectNumber MaxObjectNumber() const;

  friend bool operator==(const ObjectGraph& a, const ObjectGraph& b) {
    return a.objects_ == b.objects_ && a.trailer_ == b.trailer_;
  }

 private:
  ObjectMap objects_;
  Dictionary trailer_;
  Provenance provenance_;
  ObjectNumber root_ = 0;
};

// Follows reference chains to a terminal object. Dangling references and
// reference cycles resolve to Null. Non-reference inputs come back as-is.
Object Resolve(const ObjectGraph& graph, const Object& object);
Object Resolve(const ObjectGraph& graph, Reference ref);

// Like Resolve but returns a pointer into the graph (or to `object` itself),
// nullptr for dangling/cyclic chains. Avoids copying large subtrees.
const Object* ResolvePtr(const ObjectGraph& graph, const Object& object);

}  // namespace cpath::pdf

#endif  // CPATH_PDF_GRAPH_H_
