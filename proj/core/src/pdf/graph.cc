#include "cpath/pdf/graph.h"

#include <set>
#include <string>

#include "cpath/util/error.h"

namespace cpath::pdf {

const Dictionary* Object::DictOrStreamDict() const {
  if (const auto* d = std::get_if<Dictionary>(&value_)) return d;
  if (const auto* s = std::get_if<Stream>(&value_)) return &s->dict;
  return nullptr;
}

Dictionary* Object::DictOrStreamDict() {
  if (auto* d = std::get_if<Dictionary>(&value_)) return d;
  if (auto* s = std::get_if<Stream>(&value_)) return &s->dict;
  return nullptr;
}

std::string_view ToString(Provenance p) {
  switch (p) {
    case Provenance::kParsedPdf: return "ParsedPdf";
    case Provenance::kLoadedJson: return "LoadedJson";
    case Provenance::kMutated: return "Mutated";
  }
  return "?";
}

ObjectGraph::ObjectGraph(ObjectMap objects, Dictionary trailer,
                         Provenance provenance)
    : objects_(std::move(objects)),
      trailer_(std::move(trailer)),
      provenance_(provenance) {
  for (auto& [number, object] : objects_) {
    if (object.IsStream()) {
      Stream& s = object.AsStream();
      s.dict.insert_or_assign("Length", Object(static_cast<double>(s.data.size())));
    }
  }
  auto it = trailer_.find("Root");
  if (it == trailer_.end()) {
    throw Error(ErrorCode::kMalformedPdf, "trailer has no /Root");
  }
  if (!it->second.IsReference()) {
    throw Error(ErrorCode::kMalformedPdf, "trailer /Root is not a reference");
  }
  root_ = it->second.AsReference().number;
  const Object* root = ResolvePtr(*this, it->second);
  if (root == nullptr || !root->IsDict()) {
    throw Error(ErrorCode::kMalformedPdf,
                "trailer /Root (object " + std::to_string(root_) +
                    ") does not resolve to a dictionary");
  }
}

const Dictionary& ObjectGraph::catalog() const {
  return ResolvePtr(*this, trailer_.at("Root"))->AsDict();
}

const Object* ObjectGraph::Find(ObjectNumber number) const {
  auto it = objects_.find(number);
  return it == objects_.end() ? nullptr : &it->second;
}

namespace {

void CollectDangling(const ObjectGraph& g, const Object& o,
                     std::vector<Reference>& out) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Reference>) {
          if (g.Find(v.number) == nullptr) out.push_back(v);
        } else if constexpr (std::is_same_v<T, Array>) {
          for (const auto& e : v) CollectDangling(g, e, out);
        } else if constexpr (std::is_same_v<T, Dictionary>) {
          for (const auto& [k, e] : v) CollectDangling(g, e, out);
        } else if constexpr (std::is_same_v<T, Stream>) {
          for (const auto& [k, e] : v.dict) CollectDangling(g, e, out);
        }
      },
      o.value());
}

}  // namespace

std::vector<Reference> ObjectGraph::DanglingReferences() const {
  std::vector<Reference> out;
  for (const auto& [num, obj] : objects_) CollectDangling(*this, obj, out);
  for (const auto& [k, obj] : trailer_) CollectDangling(*this, obj, out);
  return out;
}

ObjectNumber ObjectGraph::MaxObjectNumber() const {
  return objects_.empty() ? 0 : objects_.rbegin()->first;
}

const Object* ResolvePtr(const ObjectGraph& graph, const Object& object) {
  const Object* cur = &object;
  std::set<ObjectNumber> seen;
  while (cur->IsReference()) {
    const ObjectNumber n = cur->AsReference().number;
    if (!seen.insert(n).second) return nullptr;
    cur = graph.Find(n);
    if (cur == nullptr) return nullptr;
  }
  return cur;
}

Object Resolve(const ObjectGraph& graph, const Object& object) {
  const Object* p = ResolvePtr(graph, object);
  return p == nullptr ? Object(Null{}) : *p;
}

Object Resolve(const ObjectGraph& graph, Reference ref) {
  return Resolve(graph, Object(ref));
}

}  // namespace cpath::pdf
