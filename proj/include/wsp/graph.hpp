#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "wsp/geometry.hpp"
#include "wsp/greedy.hpp"

namespace wsp {

enum class VertexKind { input, steiner, cage };

const char* to_string(VertexKind kind) noexcept;
VertexKind vertex_kind_from_string(const std::string& name);

/// Plain snapshot of a vertex set and edge list, as written to disk.
struct GraphDump {
  struct Vertex {
    std::size_t id = 0;
    Point coords;
    VertexKind kind = VertexKind::input;
    std::size_t layer = 0;

    bool operator==(const Vertex& other) const {
      return id == other.id && coords == other.coords && kind == other.kind &&
             layer == other.layer;
    }
  };
  struct LayerNode {
    std::size_t id = 0;
    std::size_t parent = kNoIndex;         // kNoIndex for the root
    std::size_t shared_vertex = kNoIndex;  // this layer's copy of the parent's point

    bool operator==(const LayerNode&) const = default;
  };

  int dimension = 0;
  std::vector<Vertex> vertices;                           // ascending id
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // a < b, sorted
  std::vector<LayerNode> layer_tree;

  bool operator==(const GraphDump&) const = default;

  /// Number of connected components of the edge graph over `vertices`.
  std::size_t component_count() const;
};

}  // namespace wsp
