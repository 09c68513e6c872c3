#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wsp/adg.hpp"
#include "wsp/config.hpp"
#include "wsp/graph.hpp"
#include "wsp/locate.hpp"
#include "wsp/greedy.hpp"

namespace wsp {

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;  // +inf for the last bin
  std::size_t count = 0;
};

struct RunStats {
  std::size_t n_input = 0;
  std::size_t m_output = 0;  // alive non-cage vertices
  std::size_t steiner_count = 0;
  std::size_t snap_count = 0;
  std::size_t layer_count = 0;
  std::size_t max_degree = 0;
  std::size_t max_walk_steps = 0;
  std::size_t insertions = 0;
  std::size_t layer_fallbacks = 0;
  std::vector<HistogramBin> aspect_histogram;  // measured R/r of non-cage vertices
  double wall_time_ms = 0.0;
};

/// Events reported to a RunObserver.
struct RunEvent {
  enum class Kind { mutation, walk };
  Kind kind = Kind::mutation;
  std::string operation;  // "layer", "insert", "snap", "delete", "steiner"
  // Walk events only.
  Point query;
  std::size_t start = 0;
  WalkResult walk;
};

/// Called after every top-level mutation and every walk. Used by tests to
/// audit intermediate states.
using RunObserver = std::function<void(const MeshStore&, const RunEvent&)>;

struct RunOptions {
  bool flatten = false;
  RunObserver observer;
};

struct RunResult {
  std::shared_ptr<const MeshStore> store;
  GreedyOrder order;
  /// input_copy[i]: vertex id of input i's deepest copy.
  std::vector<std::size_t> input_copy;
  GraphDump graph;
  std::optional<GraphDump> flattened;
  RunStats stats;
};

/// Builds the hierarchical well-spaced superset of `points`.
RunResult well_spaced_points(std::span<const Point> points, const Config& config,
                             const RunOptions& options = {});

/// Contracts the layer tree into one graph: the copies of each shared point
/// are identified (the parent's id survives) and every child cage vertex is
/// joined to every neighbor of the shared point inside the child layer.
GraphDump flatten(const GraphDump& hierarchy);

std::vector<HistogramBin> aspect_histogram(const MeshStore& store);

}  // namespace wsp
