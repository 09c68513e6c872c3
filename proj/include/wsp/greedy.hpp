#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "wsp/geometry.hpp"

namespace wsp {

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

/// Farthest-point ordering of an input set.
///
/// order[i] is the input index inserted at step i. predecessor[j] and
/// predecessor_radius[j] are indexed by *input* index j: the nearest
/// earlier point and its distance. Both are undefined (kNoIndex / 0) for
/// the first point of the order.
struct GreedyOrder {
  std::vector<std::size_t> order;
  std::vector<std::size_t> predecessor;
  std::vector<double> predecessor_radius;

  /// Radius of the point inserted at step i.
  double radius_at(std::size_t step) const { return predecessor_radius[order[step]]; }
};

/// Exact O(n^2) greedy permutation starting at `start`. Ties in both the
/// argmax and the nearest-predecessor choice go to the smallest index.
GreedyOrder greedy_permutation(std::span<const Point> points, std::size_t start = 0);

std::string greedy_order_to_json(const GreedyOrder& order);

}  // namespace wsp
