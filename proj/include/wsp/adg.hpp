#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "wsp/cage.hpp"
#include "wsp/config.hpp"
#include "wsp/geometry.hpp"
#include "wsp/graph.hpp"
#include "wsp/greedy.hpp"
#include "wsp/lp.hpp"

namespace wsp {

struct VertexRecord {
  std::size_t id = 0;
  Point point;
  VertexKind kind = VertexKind::input;
  std::size_t layer = 0;
  std::size_t input_index = kNoIndex;  // for input copies

  double inradius = 0.0;   // half the distance to the nearest neighbor
  double outradius = 0.0;  // distance to the approximate farthest corner
  /// Safe upper bound on the distance to the farthest corner of the
  /// unclipped cell; used by the search and prune tests. Infinite for cage
  /// vertices and for cells that reach the edge of the LP search ball.
  double outradius_bound = 0.0;
  Point farthest_corner;

  std::vector<std::size_t> neighbors;  // sorted ascending
  bool alive = true;
  bool in_queue = false;

  double aspect() const { return outradius / inradius; }
};

struct Layer {
  std::size_t id = 0;
  std::size_t parent = kNoIndex;
  std::size_t parent_vertex = kNoIndex;  // the shared point's id in the parent layer
  std::size_t shared_vertex = kNoIndex;  // its copy in this layer
  Point center;
  double cage_radius = 0.0;
  std::vector<std::size_t> cage_vertices;
  std::vector<std::size_t> vertices;  // every id ever added, dead ones included
  /// Region refinement works in: the cage hull shrunk so that every
  /// non-cage cell clipped to it is bounded.
  HalfspaceSet domain;
};

/// Hierarchy of layers, each with its own approximate Delaunay graph, plus
/// the per-vertex radii and the refinement queue.
class MeshStore {
 public:
  MeshStore(const Config& config, std::shared_ptr<const Cage> cage);

  const Config& config() const { return config_; }
  const Cage& cage() const { return *cage_; }
  int dimension() const { return cage_->dimension; }

  /// New layer with a cage of the given radius around `center`. The cage
  /// vertices are added and joined into a complete graph. The layer's
  /// shared vertex is not created here.
  std::size_t add_layer(const Point& center, double cage_radius, std::size_t parent,
                        std::size_t parent_vertex);

  std::size_t add_vertex(const Point& point, VertexKind kind, std::size_t layer,
                         std::size_t input_index = kNoIndex);
  void set_shared_vertex(std::size_t layer, std::size_t vertex);

  void add_edge(std::size_t a, std::size_t b);
  void remove_edge(std::size_t a, std::size_t b);
  bool has_edge(std::size_t a, std::size_t b) const;

  /// Breadth-first search from `start` accepting v iff
  /// d(p, v) <= 2 min{R(v), tau_prune r(p)}. Uses p's current inradius.
  std::vector<std::size_t> neighbor_search(std::size_t p, std::size_t start) const;
  void prune_edges(std::size_t p);
  /// Recomputes r(p) and R(p); queues p when its ratio exceeds the threshold.
  void update_aspect(std::size_t p);
  void delete_with_reconnection(std::size_t p);

  std::optional<std::size_t> pop_queue();
  std::size_t queue_size() const { return queue_.size(); }

  const VertexRecord& vertex(std::size_t id) const { return vertices_.at(id); }
  VertexRecord& vertex_mut(std::size_t id) { return vertices_.at(id); }
  std::size_t vertex_count() const { return vertices_.size(); }
  const Layer& layer(std::size_t id) const { return layers_.at(id); }
  std::size_t layer_count() const { return layers_.size(); }

  std::vector<std::size_t> alive_in_layer(std::size_t layer) const;
  std::size_t max_degree() const;

  /// The cell of p against its current graph neighbors.
  HalfspaceSet graph_cell(std::size_t p) const;

  /// Alive vertices, edges and the layer tree.
  GraphDump dump() const;

 private:
  LpSettings lp_settings() const;
  void enqueue(std::size_t p);

  Config config_;
  std::shared_ptr<const Cage> cage_;
  std::vector<VertexRecord> vertices_;
  std::vector<Layer> layers_;
  std::vector<std::map<std::vector<double>, std::size_t>> occupied_;  // per layer
  std::deque<std::size_t> queue_;

  mutable std::vector<std::size_t> stamp_;
  mutable std::size_t stamp_value_ = 0;
};

}  // namespace wsp
