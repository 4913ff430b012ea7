#include "cpath/features/walk.h"

#include <set>

namespace cpath::features {
namespace {

class Walker {
 public:
  Walker(const pdf::ObjectGraph& graph, size_t depth_limit,
         const std::function<bool(const Edge&)>& visit)
      : graph_(graph), depth_limit_(depth_limit), visit_(visit) {}

  void Run() {
    const pdf::ObjectNumber root = graph_.root_number();
    chain_.insert(root);
    std::vector<Step> steps;
    Walk(*graph_.Find(root), root, steps, StructuralPath());
  }

 private:
  void Walk(const pdf::Object& value, pdf::ObjectNumber owner,
            std::vector<Step>& steps, const StructuralPath& path) {
    if (value.IsReference()) {
      const pdf::ObjectNumber n = value.AsReference().number;
      const pdf::Object* target = graph_.Find(n);
      if (target == nullptr || chain_.count(n) != 0) return;
      chain_.insert(n);
      std::vector<Step> fresh;
      Walk(*target, n, fresh, path);
      chain_.erase(n);
      return;
    }
    if (const pdf::Dictionary* dict = value.DictOrStreamDict()) {
      if (path.size() >= depth_limit_) return;
      for (const auto& [key, child] : *dict) {
        // A stream's /Length is implied by its payload and always written.
        if (value.IsStream() && key == "Length") continue;
        const StructuralPath child_path = path.Child(key);
        const Edge edge{child_path, owner, steps, key, child};
        if (!visit_(edge)) continue;
        steps.emplace_back(key);
        Walk(child, owner, steps, child_path);
        steps.pop_back();
      }
      return;
    }
    if (value.IsArray()) {
      const pdf::Array& arr = value.AsArray();
      for (size_t i = 0; i < arr.size(); ++i) {
        steps.emplace_back(i);
        Walk(arr[i], owner, steps, path);
        steps.pop_back();
      }
    }
  }

  const pdf::ObjectGraph& graph_;
  size_t depth_limit_;
  const std::function<bool(const Edge&)>& visit_;
  std::set<pdf::ObjectNumber> chain_;
};

}  // namespace

void WalkEdges(const pdf::ObjectGraph& graph, size_t depth_limit,
               const std::function<bool(const Edge&)>& visit) {
  if (depth_limit == 0) return;
  Walker(graph, depth_limit, visit).Run();
}

}  // namespace cpath::features
