#include "wsp/refine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "wsp/cage.hpp"
#include "wsp/error.hpp"
#include "wsp/locate.hpp"

namespace wsp {

namespace {

class Refiner {
 public:
  Refiner(std::span<const Point> points, const Config& config, const RunOptions& options)
      : points_(points), config_(config), options_(options) {}

  RunResult run() {
    const auto started = std::chrono::steady_clock::now();
    check_input();
    order_ = greedy_permutation(points_);
    CageOptions cage_options;
    cage_options.seed = config_.seed;
    cage_options.size_cap = config_.cage_size_cap;
    auto cage = build_cage(static_cast<int>(points_.front().size()), config_.eta, cage_options);
    store_ = std::make_shared<MeshStore>(config_, cage);
    input_copy_.assign(points_.size(), kNoIndex);

    bootstrap();
    refine_loop();
    for (std::size_t step = 2; step < order_.order.size(); ++step) {
      insert(order_.order[step]);
      refine_loop();
    }

    RunResult result;
    result.store = store_;
    result.order = std::move(order_);
    result.input_copy = std::move(input_copy_);
    result.graph = store_->dump();
    if (options_.flatten) result.flattened = flatten(result.graph);
    stats_.n_input = points_.size();
    stats_.layer_count = store_->layer_count();
    stats_.max_degree = store_->max_degree();
    std::size_t alive = 0;
    for (std::size_t v = 0; v < store_->vertex_count(); ++v) {
      const VertexRecord& rec = store_->vertex(v);
      if (!rec.alive || rec.kind == VertexKind::cage) continue;
      ++alive;
      if (rec.kind == VertexKind::steiner) ++stats_.steiner_count;
    }
    // Each non-root layer holds a second copy of its shared point.
    stats_.m_output = alive - (stats_.layer_count - 1);
    stats_.aspect_histogram = aspect_histogram(*store_);
    stats_.wall_time_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - started)
                              .count();
    result.stats = stats_;
    return result;
  }

 private:
  void check_input() const {
    if (points_.size() < 2) throw UsageError("well_spaced_points: need at least two points");
    const auto d = points_.front().size();
    if (d < 1) throw UsageError("well_spaced_points: zero-dimensional points");
    std::set<std::vector<double>> seen;
    for (const Point& p : points_) {
      if (p.size() != d) throw UsageError("well_spaced_points: mixed dimensions");
      if (!all_finite(p)) throw UsageError("well_spaced_points: non-finite coordinate");
      if (!seen.emplace(p.data(), p.data() + p.size()).second) {
        throw UsageError("well_spaced_points: duplicate points");
      }
    }
  }

  void notify(const std::string& operation) {
    if (!options_.observer) return;
    RunEvent event;
    event.operation = operation;
    options_.observer(*store_, event);
  }

  void count_insertion() {
    if (++stats_.insertions > config_.max_insertions) {
      throw ResourceError("insertion cap of " + std::to_string(config_.max_insertions) +
                          " exceeded (" + std::to_string(store_->vertex_count()) + " vertices, " +
                          std::to_string(store_->layer_count()) + " layers so far)");
    }
  }

  // Layer with a complete graph over {shared} + cage; returns the shared vertex.
  std::size_t open_layer(const Point& center, std::size_t input_index, double radius,
                         std::size_t parent, std::size_t parent_vertex) {
    const std::size_t layer = store_->add_layer(center, radius, parent, parent_vertex);
    const std::size_t shared = store_->add_vertex(center, VertexKind::input, layer, input_index);
    if (parent != kNoIndex) store_->set_shared_vertex(layer, shared);
    for (std::size_t c : store_->layer(layer).cage_vertices) store_->add_edge(shared, c);
    for (std::size_t v : store_->layer(layer).vertices) store_->update_aspect(v);
    input_copy_[input_index] = shared;
    return shared;
  }

  void bootstrap() {
    const std::size_t first = order_.order[0];
    const std::size_t second = order_.order[1];
    const double radius = config_.root_cage_scale * distance(points_[first], points_[second]);
    const std::size_t root = open_layer(points_[first], first, radius, kNoIndex, kNoIndex);
    count_insertion();
    regular_insert(points_[second], VertexKind::input, second, root);
    notify("layer");
  }

  std::size_t regular_insert(const Point& p, VertexKind kind, std::size_t input_index,
                             std::size_t q) {
    const VertexRecord& near = store_->vertex(q);
    const std::size_t id = store_->add_vertex(p, kind, near.layer, input_index);
    store_->vertex_mut(id).inradius = distance(p, store_->vertex(q).point) / 2.0;
    for (std::size_t v : store_->neighbor_search(id, q)) store_->add_edge(id, v);
    store_->update_aspect(id);
    store_->prune_edges(id);
    const std::vector<std::size_t> around = store_->vertex(id).neighbors;
    for (std::size_t v : around) {
      if (!store_->has_edge(id, v)) continue;
      store_->update_aspect(v);
      store_->prune_edges(v);
    }
    if (kind == VertexKind::input) input_copy_[input_index] = id;
    return id;
  }

  void insert(std::size_t index) {
    const Point& p = points_[index];
    const std::size_t start = input_copy_.at(order_.predecessor[index]);
    const WalkResult walk = greedy_walk(*store_, p, start, config_.max_walk_steps);
    stats_.max_walk_steps = std::max(stats_.max_walk_steps, walk.steps);
    if (options_.observer) {
      RunEvent event;
      event.kind = RunEvent::Kind::walk;
      event.operation = "walk";
      event.query = p;
      event.start = start;
      event.walk = walk;
      options_.observer(*store_, event);
    }
    count_insertion();

    const VertexRecord& q = store_->vertex(walk.vertex);
    // Both branches below add vertices, so q must not be used after them.
    if (q.kind == VertexKind::steiner) {
      snap(index, walk.vertex);
      return;
    }
    if (q.kind == VertexKind::input && distance(p, q.point) < q.inradius / config_.K()) {
      if (input_copy_[q.input_index] == q.id) {
        new_layer(index, walk.vertex);
        return;
      }
      // q already has a child layer at another scale.
      ++stats_.layer_fallbacks;
    }
    regular_insert(p, VertexKind::input, index, walk.vertex);
    notify("insert");
  }

  void snap(std::size_t index, std::size_t q) {
    const Point& p = points_[index];
    std::size_t replacement = kNoIndex;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t u : store_->vertex(q).neighbors) {
      const double du = distance(p, store_->vertex(u).point);
      if (du < best) {
        best = du;
        replacement = u;
      }
    }
    if (replacement == kNoIndex) throw InternalError("snap: Steiner vertex has no neighbors");
    store_->delete_with_reconnection(q);
    notify("delete");
    regular_insert(p, VertexKind::input, index, replacement);
    ++stats_.snap_count;
    notify("snap");
  }

  void new_layer(std::size_t index, std::size_t q) {
    const VertexRecord parent = store_->vertex(q);
    const double radius = 2.0 * distance(points_[index], parent.point);
    const std::size_t copy =
        open_layer(parent.point, parent.input_index, radius, parent.layer, parent.id);
    regular_insert(points_[index], VertexKind::input, index, copy);
    notify("layer");
  }

  void refine_loop() {
    const double threshold = config_.tau_threshold();
    while (auto next = store_->pop_queue()) {
      const VertexRecord& v = store_->vertex(*next);
      if (!v.alive || v.kind == VertexKind::cage || !(v.aspect() > threshold)) continue;
      count_insertion();
      const Point corner = v.farthest_corner;
      regular_insert(corner, VertexKind::steiner, kNoIndex, *next);
      notify("steiner");
    }
  }

  std::span<const Point> points_;
  Config config_;
  const RunOptions& options_;
  GreedyOrder order_;
  std::shared_ptr<MeshStore> store_;
  std::vector<std::size_t> input_copy_;
  RunStats stats_;
};

}  // namespace

RunResult well_spaced_points(std::span<const Point> points, const Config& config,
                             const RunOptions& options) {
  config.validate();
  return Refiner(points, config, options).run();
}

std::vector<HistogramBin> aspect_histogram(const MeshStore& store) {
  static const double edges[] = {1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0, 12.0, 16.0};
  std::vector<HistogramBin> bins;
  bins.push_back({0.0, edges[0], 0});
  for (std::size_t i = 0; i + 1 < std::size(edges); ++i) bins.push_back({edges[i], edges[i + 1], 0});
  bins.push_back({edges[std::size(edges) - 1], std::numeric_limits<double>::infinity(), 0});
  for (std::size_t v = 0; v < store.vertex_count(); ++v) {
    const VertexRecord& rec = store.vertex(v);
    if (!rec.alive || rec.kind == VertexKind::cage) continue;
    const double a = rec.aspect();
    for (HistogramBin& bin : bins) {
      if (a >= bin.lo && a < bin.hi) {
        ++bin.count;
        break;
      }
    }
  }
  return bins;
}

}  // namespace wsp
