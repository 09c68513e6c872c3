#include "wsp/adg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wsp/error.hpp"

namespace wsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> key_of(const Point& p) { return {p.data(), p.data() + p.size()}; }

}  // namespace

const char* to_string(VertexKind kind) noexcept {
  switch (kind) {
    case VertexKind::input: return "input";
    case VertexKind::steiner: return "steiner";
    case VertexKind::cage: return "cage";
  }
  return "unknown";
}

VertexKind vertex_kind_from_string(const std::string& name) {
  if (name == "input") return VertexKind::input;
  if (name == "steiner") return VertexKind::steiner;
  if (name == "cage") return VertexKind::cage;
  throw UsageError("unknown vertex kind '" + name + "'");
}

std::size_t GraphDump::component_count() const {
  std::map<std::size_t, std::size_t> index;
  for (std::size_t i = 0; i < vertices.size(); ++i) index[vertices[i].id] = i;
  std::vector<std::size_t> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = vertices.size();
  for (const auto& [a, b] : edges) {
    const std::size_t ra = find(index.at(a));
    const std::size_t rb = find(index.at(b));
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components;
}

MeshStore::MeshStore(const Config& config, std::shared_ptr<const Cage> cage)
    : config_(config), cage_(std::move(cage)) {
  if (!cage_) throw UsageError("MeshStore: cage required");
  config_.validate();
}

LpSettings MeshStore::lp_settings() const { return {config_.epsilon, config_.tau_prune}; }

std::size_t MeshStore::add_layer(const Point& center, double cage_radius, std::size_t parent,
                                 std::size_t parent_vertex) {
  if (center.size() != dimension()) throw UsageError("add_layer: dimension mismatch");
  if (!(cage_radius > 0.0)) throw UsageError("add_layer: cage radius must be positive");
  Layer layer;
  layer.id = layers_.size();
  layer.parent = parent;
  layer.parent_vertex = parent_vertex;
  layer.center = center;
  layer.cage_radius = cage_radius;
  const double shrink = 1.0 - 0.5 * cage_->eta * cage_->eta;
  const double reach = shrink * shrink * (1.0 - 1e-3) * cage_radius;
  for (const Point& c : cage_->directions) layer.domain.add(c, c.dot(center) + reach);
  layers_.push_back(std::move(layer));
  occupied_.emplace_back();

  const std::size_t id = layers_.back().id;
  for (const Point& x : place_cage(*cage_, center, cage_radius)) {
    layers_[id].cage_vertices.push_back(add_vertex(x, VertexKind::cage, id));
  }
  const auto& cage_ids = layers_[id].cage_vertices;
  for (std::size_t i = 0; i < cage_ids.size(); ++i) {
    for (std::size_t j = i + 1; j < cage_ids.size(); ++j) add_edge(cage_ids[i], cage_ids[j]);
  }
  return id;
}

std::size_t MeshStore::add_vertex(const Point& point, VertexKind kind, std::size_t layer,
                                  std::size_t input_index) {
  if (layer >= layers_.size()) throw UsageError("add_vertex: unknown layer");
  if (point.size() != dimension()) throw UsageError("add_vertex: dimension mismatch");
  if (!all_finite(point)) throw UsageError("add_vertex: non-finite coordinates");
  auto [it, fresh] = occupied_[layer].emplace(key_of(point), vertices_.size());
  if (!fresh) throw UsageError("add_vertex: point already present in layer");

  VertexRecord v;
  v.id = vertices_.size();
  v.point = point;
  v.kind = kind;
  v.layer = layer;
  v.input_index = input_index;
  v.farthest_corner = point;
  if (kind == VertexKind::cage) {
    v.outradius = kInf;
    v.outradius_bound = kInf;
  }
  vertices_.push_back(std::move(v));
  layers_[layer].vertices.push_back(vertices_.back().id);
  stamp_.push_back(0);
  return vertices_.back().id;
}

void MeshStore::set_shared_vertex(std::size_t layer, std::size_t vertex) {
  layers_.at(layer).shared_vertex = vertex;
}

void MeshStore::add_edge(std::size_t a, std::size_t b) {
  if (a == b) return;
  VertexRecord& va = vertices_.at(a);
  VertexRecord& vb = vertices_.at(b);
  if (va.layer != vb.layer) throw InternalError("add_edge: cross-layer edge");
  if (!va.alive || !vb.alive) throw InternalError("add_edge: dead endpoint");
  auto insert = [](std::vector<std::size_t>& list, std::size_t x) {
    auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it == list.end() || *it != x) list.insert(it, x);
  };
  insert(va.neighbors, b);
  insert(vb.neighbors, a);
}

void MeshStore::remove_edge(std::size_t a, std::size_t b) {
  auto erase = [](std::vector<std::size_t>& list, std::size_t x) {
    auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it != list.end() && *it == x) list.erase(it);
  };
  erase(vertices_.at(a).neighbors, b);
  erase(vertices_.at(b).neighbors, a);
}

bool MeshStore::has_edge(std::size_t a, std::size_t b) const {
  const auto& list = vertices_.at(a).neighbors;
  return std::binary_search(list.begin(), list.end(), b);
}

std::vector<std::size_t> MeshStore::neighbor_search(std::size_t p, std::size_t start) const {
  const VertexRecord& vp = vertices_.at(p);
  if (!vertices_.at(start).alive) throw InternalError("neighbor_search: start vertex is dead");
  if (vertices_.at(start).layer != vp.layer) throw InternalError("neighbor_search: layer mismatch");

  const double reach = config_.tau_prune * vp.inradius;
  ++stamp_value_;
  std::vector<std::size_t> accepted;
  std::vector<std::size_t> frontier{start};
  stamp_[start] = stamp_value_;
  stamp_[p] = stamp_value_;
  while (!frontier.empty()) {
    std::sort(frontier.begin(), frontier.end());
    std::vector<std::size_t> next;
    for (std::size_t v : frontier) {
      const VertexRecord& vv = vertices_[v];
      const double dv = distance(vp.point, vv.point);
      // The start is p's nearest neighbor, so it is kept unconditionally.
      if (v != start && dv > 2.0 * std::min(vv.outradius_bound, reach)) continue;
      accepted.push_back(v);
      for (std::size_t u : vv.neighbors) {
        if (stamp_[u] == stamp_value_ || !vertices_[u].alive) continue;
        stamp_[u] = stamp_value_;
        next.push_back(u);
      }
    }
    frontier = std::move(next);
  }
  std::sort(accepted.begin(), accepted.end());
  return accepted;
}

void MeshStore::prune_edges(std::size_t p) {
  const VertexRecord& vp = vertices_.at(p);
  std::vector<std::size_t> doomed;
  for (std::size_t q : vp.neighbors) {
    const VertexRecord& vq = vertices_[q];
    if (distance(vp.point, vq.point) > 2.0 * std::min(vp.outradius_bound, vq.outradius_bound)) {
      doomed.push_back(q);
    }
  }
  for (std::size_t q : doomed) remove_edge(p, q);
}

HalfspaceSet MeshStore::graph_cell(std::size_t p) const {
  const VertexRecord& vp = vertices_.at(p);
  HalfspaceSet cell;
  for (std::size_t q : vp.neighbors) {
    const Point& x = vertices_[q].point;
    Point a = x - vp.point;
    const double b = a.dot(x + vp.point) / 2.0;
    cell.add(std::move(a), b);
  }
  return cell;
}

void MeshStore::update_aspect(std::size_t p) {
  VertexRecord& vp = vertices_.at(p);
  if (vp.neighbors.empty()) throw InternalError("update_aspect: vertex has no neighbors");
  double nearest = kInf;
  for (std::size_t q : vp.neighbors) nearest = std::min(nearest, distance(vp.point, vertices_[q].point));
  vp.inradius = nearest / 2.0;
  if (vp.kind == VertexKind::cage) return;

  const LpSettings settings = lp_settings();
  const Layer& layer = layers_[vp.layer];
  HalfspaceSet cell = graph_cell(p);
  Point natural = approximate_farthest_corner(cell, vp.point, vp.inradius, *cage_, settings);
  const double natural_radius = distance(vp.point, natural);
  const bool capped = natural_radius >= 0.5 * vp.inradius * config_.tau_prune;
  vp.outradius_bound = capped ? kInf : natural_radius / config_.approximation_factor();

  const double tol = kRelTol * std::max(magnitude_scale(vp.point), layer.cage_radius);
  if (layer.domain.contains(natural, tol) || !layer.domain.contains(vp.point, tol)) {
    // A site outside the domain keeps its unclipped measurement.
    vp.farthest_corner = std::move(natural);
    vp.outradius = natural_radius;
  } else {
    cell.append(layer.domain);
    vp.farthest_corner = approximate_farthest_corner(cell, vp.point, vp.inradius, *cage_, settings);
    vp.outradius = distance(vp.point, vp.farthest_corner);
  }
  if (vp.aspect() > config_.tau_threshold()) enqueue(p);
}

void MeshStore::enqueue(std::size_t p) {
  VertexRecord& vp = vertices_[p];
  if (vp.in_queue || vp.kind == VertexKind::cage) return;
  vp.in_queue = true;
  queue_.push_back(p);
}

std::optional<std::size_t> MeshStore::pop_queue() {
  if (queue_.empty()) return std::nullopt;
  const std::size_t p = queue_.front();
  queue_.pop_front();
  vertices_[p].in_queue = false;
  return p;
}

void MeshStore::delete_with_reconnection(std::size_t p) {
  VertexRecord& vp = vertices_.at(p);
  if (!vp.alive) throw UsageError("delete_with_reconnection: vertex already deleted");
  if (vp.kind != VertexKind::steiner) {
    throw UsageError("delete_with_reconnection: only Steiner vertices may be deleted");
  }
  const std::vector<std::size_t> around = vp.neighbors;
  for (std::size_t q : around) remove_edge(p, q);
  vp.alive = false;
  occupied_[vp.layer].erase(key_of(vp.point));

  for (std::size_t i = 0; i < around.size(); ++i) {
    for (std::size_t j = i + 1; j < around.size(); ++j) add_edge(around[i], around[j]);
  }
  // A neighbor left with no edges has no cell to measure.
  for (std::size_t q : around) {
    if (!vertices_[q].neighbors.empty()) update_aspect(q);
  }
  for (std::size_t q : around) prune_edges(q);
}

std::vector<std::size_t> MeshStore::alive_in_layer(std::size_t layer) const {
  std::vector<std::size_t> out;
  for (std::size_t v : layers_.at(layer).vertices) {
    if (vertices_[v].alive) out.push_back(v);
  }
  return out;
}

std::size_t MeshStore::max_degree() const {
  std::size_t best = 0;
  for (const VertexRecord& v : vertices_) {
    if (v.alive) best = std::max(best, v.neighbors.size());
  }
  return best;
}

GraphDump MeshStore::dump() const {
  GraphDump g;
  g.dimension = dimension();
  for (const VertexRecord& v : vertices_) {
    if (!v.alive) continue;
    g.vertices.push_back({v.id, v.point, v.kind, v.layer});
    for (std::size_t u : v.neighbors) {
      if (v.id < u) g.edges.emplace_back(v.id, u);
    }
  }
  for (const Layer& l : layers_) g.layer_tree.push_back({l.id, l.parent, l.shared_vertex});
  return g;
}

}  // namespace wsp
