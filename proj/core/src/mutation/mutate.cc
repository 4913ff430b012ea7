#include "cpath/mutation/mutate.h"

#include <algorithm>
#include <set>

#include "cpath/util/error.h"

namespace cpath::mutation {
namespace {

using features::PathSet;
using features::Step;
using features::StructuralPath;
using pdf::Object;
using pdf::ObjectGraph;

template <typename ObjectT>
auto NavigateToContainer(ObjectT& owner_value, const std::vector<Step>& steps)
    -> decltype(owner_value.DictOrStreamDict()) {
  ObjectT* cur = &owner_value;
  for (const Step& step : steps) {
    if (const auto* key = std::get_if<std::string>(&step)) {
      auto* d = cur->DictOrStreamDict();
      if (d == nullptr) return nullptr;
      auto it = d->find(*key);
      if (it == d->end()) return nullptr;
      cur = &it->second;
    } else {
      const size_t i = std::get<size_t>(step);
      if (!cur->IsArray() || i >= cur->AsArray().size()) return nullptr;
      cur = &cur->AsArray()[i];
    }
  }
  return cur->DictOrStreamDict();
}

PathSet Difference(const PathSet& a, const PathSet& b) {
  PathSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.end()));
  return out;
}

[[noreturn]] void Absent(const StructuralPath& path) {
  throw Error(ErrorCode::kPathAbsent, "path " + path.rendered() + " is not present");
}

// Moves every stream inside `value` (including `value` itself) into a new
// numbered object and leaves a reference behind.
void HoistStreams(Object& value, ObjectGraph::ObjectMap& objects) {
  if (value.IsStream()) {
    Object stream = std::move(value);
    for (auto& [k, v] : stream.AsStream().dict) HoistStreams(v, objects);
    const pdf::ObjectNumber n = objects.empty() ? 1 : objects.rbegin()->first + 1;
    objects.emplace(n, std::move(stream));
    value = pdf::Reference{n, 0};
  } else if (value.IsArray()) {
    for (auto& e : value.AsArray()) HoistStreams(e, objects);
  } else if (value.IsDict()) {
    for (auto& [k, v] : value.AsDict()) HoistStreams(v, objects);
  }
}

Object MaterializeImpl(const ObjectGraph& g, const Object& o,
                       std::set<pdf::ObjectNumber>& chain, size_t depth) {
  if (depth == 0) return pdf::Null{};
  if (o.IsReference()) {
    const pdf::ObjectNumber n = o.AsReference().number;
    const Object* target = g.Find(n);
    if (target == nullptr || chain.count(n) != 0) return pdf::Null{};
    chain.insert(n);
    Object out = MaterializeImpl(g, *target, chain, depth);
    chain.erase(n);
    return out;
  }
  if (o.IsArray()) {
    pdf::Array arr;
    for (const auto& e : o.AsArray()) arr.push_back(MaterializeImpl(g, e, chain, depth - 1));
    return arr;
  }
  if (o.IsDict()) {
    pdf::Dictionary d;
    for (const auto& [k, v] : o.AsDict()) d.emplace(k, MaterializeImpl(g, v, chain, depth - 1));
    return d;
  }
  if (o.IsStream()) {
    pdf::Stream s;
    s.data = o.AsStream().data;
    for (const auto& [k, v] : o.AsStream().dict) {
      s.dict.emplace(k, MaterializeImpl(g, v, chain, depth - 1));
    }
    return s;
  }
  return o;
}

}  // namespace

std::string Site::ToString() const {
  std::string s = std::to_string(owner) + ":";
  for (const Step& step : container) {
    if (const auto* key = std::get_if<std::string>(&step)) {
      s += *key;
    } else {
      s += std::to_string(std::get<size_t>(step));
    }
    s += '/';
  }
  return s + key;
}

const Object* ValueAt(const ObjectGraph& graph, const Site& site) {
  const Object* owner = graph.Find(site.owner);
  if (owner == nullptr) return nullptr;
  const pdf::Dictionary* d = NavigateToContainer(*owner, site.container);
  if (d == nullptr) return nullptr;
  auto it = d->find(site.key);
  return it == d->end() ? nullptr : &it->second;
}

std::vector<Site> LocateSites(const ObjectGraph& graph, const StructuralPath& path) {
  std::set<Site> sites;
  const auto& target = path.components();
  features::WalkEdges(graph, target.size(), [&](const features::Edge& e) {
    const size_t depth = e.path.size();
    if (e.key != target[depth - 1]) return false;
    if (depth == target.size()) {
      sites.insert(Site{e.owner, e.container, e.key});
      return false;
    }
    return true;
  });
  return {sites.begin(), sites.end()};
}

MutationOutcome DeletePath(const ObjectGraph& graph, const StructuralPath& path,
                           size_t depth_limit) {
  std::vector<Site> sites = LocateSites(graph, path);
  if (sites.empty()) Absent(path);
  ObjectGraph::ObjectMap objects = graph.objects();
  for (const Site& site : sites) {
    auto it = objects.find(site.owner);
    if (it == objects.end()) continue;
    if (pdf::Dictionary* d = NavigateToContainer(it->second, site.container)) {
      d->erase(site.key);
    }
  }
  ObjectGraph mutated(std::move(objects), graph.trailer(), pdf::Provenance::kMutated);
  PathSet flipped = Difference(features::ExtractPaths(graph, depth_limit),
                               features::ExtractPaths(mutated, depth_limit));
  return MutationOutcome{std::move(mutated), std::move(sites), std::move(flipped)};
}

MutationOutcome ReplacePath(const ObjectGraph& graph, const StructuralPath& path,
                            const Object& donor, size_t depth_limit) {
  std::vector<Site> sites = LocateSites(graph, path);
  if (sites.empty()) Absent(path);
  ObjectGraph::ObjectMap objects = graph.objects();
  Object value = donor;
  HoistStreams(value, objects);
  for (const Site& site : sites) {
    auto it = objects.find(site.owner);
    if (it == objects.end()) continue;
    if (pdf::Dictionary* d = NavigateToContainer(it->second, site.container)) {
      d->insert_or_assign(site.key, value);
    }
  }
  ObjectGraph mutated(std::move(objects), graph.trailer(), pdf::Provenance::kMutated);
  PathSet flipped = Difference(features::ExtractPaths(graph, depth_limit),
                               features::ExtractPaths(mutated, depth_limit));
  return MutationOutcome{std::move(mutated), std::move(sites), std::move(flipped)};
}

PathSet ProbeDependents(const ObjectGraph& graph, const StructuralPath& path,
                        size_t depth_limit) {
  PathSet flipped = DeletePath(graph, path, depth_limit).flipped;
  flipped.erase(path);
  return flipped;
}

Object Materialize(const ObjectGraph& graph, const Object& object, size_t max_depth) {
  std::set<pdf::ObjectNumber> chain;
  return MaterializeImpl(graph, object, chain, max_depth);
}

Object SelectDonor(const ObjectGraph& donor_graph, const StructuralPath& path) {
  const std::vector<Site> sites = LocateSites(donor_graph, path);
  if (!sites.empty()) {
    if (const Object* v = ValueAt(donor_graph, sites.front())) {
      return Materialize(donor_graph, *v);
    }
  }
  for (const auto& [key, value] : donor_graph.catalog()) {
    const Object* resolved = pdf::ResolvePtr(donor_graph, value);
    if (resolved != nullptr && resolved->IsDict()) return Materialize(donor_graph, value);
  }
  return pdf::Text{"benign"};
}

}  // namespace cpath::mutation
