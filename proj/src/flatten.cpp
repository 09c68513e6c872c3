#include <algorithm>
#include <map>
#include <set>

#include "wsp/error.hpp"
#include "wsp/refine.hpp"

namespace wsp {

GraphDump flatten(const GraphDump& hierarchy) {
  std::map<std::size_t, const GraphDump::Vertex*> by_id;
  for (const auto& v : hierarchy.vertices) by_id[v.id] = &v;

  std::map<std::size_t, std::vector<std::size_t>> adjacency;
  for (const auto& [a, b] : hierarchy.edges) {
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }

  // merged_into[child copy] = the parent layer's vertex at the same point.
  std::map<std::size_t, std::size_t> merged_into;
  std::set<std::pair<std::size_t, std::size_t>> edges(hierarchy.edges.begin(),
                                                      hierarchy.edges.end());
  for (const auto& node : hierarchy.layer_tree) {
    if (node.parent == kNoIndex) continue;
    const auto shared = by_id.find(node.shared_vertex);
    if (shared == by_id.end()) throw UsageError("flatten: shared vertex missing from dump");
    const GraphDump::Vertex* original = nullptr;
    for (const auto& v : hierarchy.vertices) {
      if (v.layer == node.parent && v.coords == shared->second->coords) {
        original = &v;
        break;
      }
    }
    if (original == nullptr) throw UsageError("flatten: shared point absent from parent layer");
    merged_into[node.shared_vertex] = original->id;

    const auto& inside = adjacency[node.shared_vertex];
    for (const auto& v : hierarchy.vertices) {
      if (v.layer != node.id || v.kind != VertexKind::cage) continue;
      for (std::size_t u : inside) {
        if (u != v.id) edges.emplace(std::min(u, v.id), std::max(u, v.id));
      }
    }
  }

  auto resolve = [&](std::size_t id) {
    for (auto it = merged_into.find(id); it != merged_into.end(); it = merged_into.find(id)) {
      id = it->second;
    }
    return id;
  };

  GraphDump out;
  out.dimension = hierarchy.dimension;
  for (const auto& v : hierarchy.vertices) {
    if (merged_into.count(v.id)) continue;
    out.vertices.push_back({v.id, v.coords, v.kind, 0});
  }
  std::set<std::pair<std::size_t, std::size_t>> merged;
  for (const auto& [a, b] : edges) {
    const std::size_t ra = resolve(a);
    const std::size_t rb = resolve(b);
    if (ra != rb) merged.emplace(std::min(ra, rb), std::max(ra, rb));
  }
  out.edges.assign(merged.begin(), merged.end());
  out.layer_tree.push_back({0, kNoIndex, kNoIndex});
  return out;
}

}  // namespace wsp
