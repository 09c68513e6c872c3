#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace wsp {

/// A point (or vector) in R^d. The dimension is fixed per run.
using Point = Eigen::VectorXd;

/// Relative tolerance applied to scalar-product comparisons.
inline constexpr double kRelTol = 1e-9;

double distance(const Point& u, const Point& v);
double squared_distance(const Point& u, const Point& v);

/// d(x,q)^2 - d(x,p)^2, evaluated through the bisector's linear form
/// 2<p - q, x - (p+q)/2>. Positive iff x is strictly closer to p.
double closer_to(const Point& x, const Point& p, const Point& q);

struct Crossing {
  Point point;
  double parameter;  // position along the segment, in [0, 1]
};

/// Where the segment w->target leaves the half of space closer to v and
/// enters the half closer to q. Returns nothing when the segment does not
/// reach the bisector, runs parallel to it, or moves away from q.
std::optional<Crossing> segment_bisector_crossing(const Point& w, const Point& target,
                                                  const Point& v, const Point& q);

/// Twice the largest distance from points[0]; lies in [diam, 2 diam].
double diameter_estimate(std::span<const Point> points);

bool all_finite(const Point& p);

/// Largest absolute coordinate, at least 1. Used to scale tolerances.
double magnitude_scale(const Point& p);

}  // namespace wsp
