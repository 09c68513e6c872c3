#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "wsp/adg.hpp"
#include "wsp/geometry.hpp"
#include "wsp/lp.hpp"

// Slow, direct ground-truth computations. Nothing in the algorithm calls
// these; tests and --verify use them to audit its output.
namespace wsp::oracle {

/// Index of the point of S nearest to p, skipping entries equal to p.
/// Ties go to the smallest index.
std::size_t brute_nn(const Point& p, std::span<const Point> S);

/// Distance from x to its second-nearest point of S (x itself counts when
/// it belongs to S).
double feature_size(const Point& x, std::span<const Point> S);

using IndexPair = std::pair<std::size_t, std::size_t>;

struct DelaunayEdges {
  std::set<IndexPair> edges;       // witness sphere with clearly positive slack
  std::set<IndexPair> degenerate;  // best slack within tolerance of zero
};

/// Best empty-sphere slack for the pair (i, j): the largest s such that some
/// x equidistant from S[i] and S[j] has d(x, r)^2 - d(x, S[i])^2 >= s for
/// every other r, in coordinates normalised to unit diameter. Capped at 1.
double delaunay_slack(std::span<const Point> S, std::size_t i, std::size_t j);

DelaunayEdges exact_delaunay_edges(std::span<const Point> S);

/// Vertices of {x : A x <= b} for a bounded region containing `inside`.
/// Throws UsageError when the region is unbounded.
std::vector<Point> polytope_vertices(const HalfspaceSet& region, const Point& inside);

/// Vertices of the Voronoi cell of S[p], intersected with `clip`.
std::vector<Point> voronoi_cell_vertices(std::size_t p, std::span<const Point> S,
                                         const HalfspaceSet& clip);

/// Outradius over inradius of S[p]'s cell intersected with `clip`.
double exact_aspect(std::size_t p, std::span<const Point> S, const HalfspaceSet& clip);

/// Checks that each layer graph contains its layer's Delaunay edges by
/// showing that every non-cage vertex's graph cell has no vertex strictly
/// closer to another site. Results are cached between calls so that a
/// state after a small mutation is audited in time proportional to the
/// change.
class DelaunayAuditor {
 public:
  struct Violation {
    std::size_t vertex = 0;
    std::size_t closer_site = 0;
    Point witness;
  };

  std::vector<Violation> audit(const MeshStore& store);

 private:
  struct Entry {
    std::vector<std::size_t> neighbors;
    Point point;
    std::vector<Point> corners;  // relative to point
  };
  std::map<std::size_t, Entry> cache_;
  std::size_t seen_vertices_ = 0;
};

}  // namespace wsp::oracle
