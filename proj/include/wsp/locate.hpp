#pragma once

#include <cstddef>

#include "wsp/adg.hpp"

namespace wsp {

struct WalkResult {
  std::size_t vertex = 0;  // the site whose cell contains the query
  std::size_t steps = 0;   // bisectors crossed
};

/// Walks the segment from `start` to p through the cells of start's layer,
/// crossing into a neighbor's cell at each bisector the segment leaves
/// through. Only scalar products are used; the graph must contain every
/// Delaunay edge of the layer.
WalkResult greedy_walk(const MeshStore& store, const Point& p, std::size_t start,
                       std::size_t max_steps);

}  // namespace wsp
