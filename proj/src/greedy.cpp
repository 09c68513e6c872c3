#include "wsp/greedy.hpp"

#include <limits>

#include "json.hpp"

#include "wsp/error.hpp"

namespace wsp {

GreedyOrder greedy_permutation(std::span<const Point> points, std::size_t start) {
  const std::size_t n = points.size();
  if (n < 2) throw UsageError("greedy_permutation: need at least two points");
  if (start >= n) throw UsageError("greedy_permutation: start index out of range");

  GreedyOrder out;
  out.order.reserve(n);
  out.predecessor.assign(n, kNoIndex);
  out.predecessor_radius.assign(n, 0.0);

  // gap[j]: distance from j to the current prefix, near[j]: which prefix point.
  std::vector<double> gap(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> near(n, kNoIndex);
  std::vector<bool> taken(n, false);

  std::size_t next = start;
  for (std::size_t step = 0; step < n; ++step) {
    taken[next] = true;
    out.order.push_back(next);
    if (step > 0) {
      if (gap[next] == 0.0) throw UsageError("greedy_permutation: duplicate points");
      out.predecessor[next] = near[next];
      out.predecessor_radius[next] = gap[next];
    }
    const Point& added = points[next];
    std::size_t best = kNoIndex;
    double best_gap = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (taken[j]) continue;
      const double dj = distance(points[j], added);
      // Strict comparison keeps the earliest prefix point on ties.
      if (dj < gap[j]) {
        gap[j] = dj;
        near[j] = next;
      } else if (dj == gap[j] && next < near[j]) {
        near[j] = next;
      }
      if (gap[j] > best_gap) {
        best_gap = gap[j];
        best = j;
      }
    }
    next = best;
  }
  return out;
}

std::string greedy_order_to_json(const GreedyOrder& order) {
  nlohmann::json j;
  j["order"] = order.order;
  auto pred = nlohmann::json::array();
  auto radii = nlohmann::json::array();
  for (std::size_t step = 0; step < order.order.size(); ++step) {
    const std::size_t idx = order.order[step];
    if (step == 0) {
      pred.push_back(nullptr);
      radii.push_back(nullptr);
    } else {
      pred.push_back(order.predecessor[idx]);
      radii.push_back(order.predecessor_radius[idx]);
    }
  }
  // Arrays are aligned with "order": entry i belongs to order[i].
  j["predecessor"] = pred;
  j["radii"] = radii;
  return j.dump();
}

}  // namespace wsp
