#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wsp/cage.hpp"
#include "wsp/geometry.hpp"

namespace wsp {

/// Constraints a_i^T x <= b_i.
struct HalfspaceSet {
  std::vector<Point> normals;
  std::vector<double> offsets;

  std::size_t size() const { return normals.size(); }
  bool empty() const { return normals.empty(); }
  void add(Point normal, double offset);
  void append(const HalfspaceSet& other);

  /// Largest violation max_i (a_i^T x - b_i) / |a_i|; <= 0 inside.
  double max_violation(const Point& x) const;
  bool contains(const Point& x, double tolerance) const;

  /// The Voronoi cell of p against the given sites: one bisector
  /// (q - p)^T x <= (q - p)^T (q + p) / 2 per site.
  static HalfspaceSet voronoi_cell(const Point& p, std::span<const Point> sites);
};

struct LpSettings {
  double epsilon = 0.1;
  double tau_prune = 64.0;
};

/// Central-cut ellipsoid iterations needed so that a feasible region of the
/// guaranteed minimum volume is found: 2x safety over 2d ln(V_start / V_min).
std::size_t ellipsoid_iteration_budget(int d, double tau_prune, double epsilon);

/// Volume of the unit ball in R^d.
double unit_ball_volume(int d);

/// Lower bound on the volume of the truncated cone joining an apex at
/// distance s (along c) to ball(p, r), cut by c^T (x - p) >= t.
double cone_volume_lower_bound(double r, double s, double t, int d);

/// Ellipsoid feasibility for cell + {c^T (x - p) >= t}, starting from
/// ball(p, r * tau_prune). Any returned point has been verified against every
/// constraint. NOT FOUND is reported as std::nullopt.
std::optional<Point> ellipsoid_feasible(const HalfspaceSet& cell, const Point& p, double r,
                                        const Point& c, double t, const LpSettings& settings);

/// A point z of the cell with c^T (z - p) >= (1 - epsilon) max_{x in cell} c^T (x - p),
/// found by searching the threshold grid t_i = r + i (r tau - r) / L.
/// Falls back to p + r c when no threshold is feasible.
Point extremal_in_direction(const HalfspaceSet& cell, const Point& p, double r, const Point& c,
                            const LpSettings& settings);

/// Runs extremal_in_direction for every cage direction and keeps the output
/// farthest from p: within (1 - epsilon)(1 - eta^2 / 2) of the farthest corner.
Point approximate_farthest_corner(const HalfspaceSet& cell, const Point& p, double r,
                                  const Cage& cage, const LpSettings& settings);

}  // namespace wsp
