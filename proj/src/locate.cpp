#include "wsp/locate.hpp"

#include <algorithm>
#include <string>

#include "wsp/error.hpp"

namespace wsp {

WalkResult greedy_walk(const MeshStore& store, const Point& p, std::size_t start,
                       std::size_t max_steps) {
  const VertexRecord& origin = store.vertex(start);
  if (!origin.alive) throw InternalError("greedy_walk: start vertex is dead");
  if (p.size() != origin.point.size()) throw UsageError("greedy_walk: dimension mismatch");

  WalkResult out{start, 0};
  if (origin.point == p) return out;

  // Every step moves to a neighbor further along p - origin, so the walk
  // cannot revisit a vertex; the cap only guards against a broken graph.
  double progress = 0.0;
  constexpr double kSlack = 1e-9;
  while (true) {
    const VertexRecord& here = store.vertex(out.vertex);
    std::size_t best = kNoIndex;
    double best_parameter = 0.0;
    for (std::size_t q : here.neighbors) {
      const VertexRecord& there = store.vertex(q);
      if (!there.alive) continue;
      auto hit = segment_bisector_crossing(origin.point, p, here.point, there.point);
      if (!hit || hit->parameter < progress - kSlack) continue;
      if (best == kNoIndex || hit->parameter < best_parameter) {
        best = q;
        best_parameter = hit->parameter;
      }
    }
    if (best == kNoIndex) return out;
    out.vertex = best;
    progress = std::max(progress, best_parameter);
    if (++out.steps > max_steps) {
      throw InternalError("greedy_walk: exceeded " + std::to_string(max_steps) + " steps");
    }
  }
}

}  // namespace wsp
