#include "wsp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wsp/error.hpp"

namespace wsp {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::usage: return "usage";
    case ErrorKind::ingestion: return "ingestion";
    case ErrorKind::config: return "config";
    case ErrorKind::resource: return "resource";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

namespace {

void require_same_dimension(const Point& u, const Point& v) {
  if (u.size() != v.size()) {
    throw UsageError("dimension mismatch: " + std::to_string(u.size()) + " vs " +
                     std::to_string(v.size()));
  }
}

}  // namespace

double squared_distance(const Point& u, const Point& v) {
  require_same_dimension(u, v);
  return (u - v).squaredNorm();
}

double distance(const Point& u, const Point& v) {
  require_same_dimension(u, v);
  return (u - v).norm();
}

double closer_to(const Point& x, const Point& p, const Point& q) {
  require_same_dimension(x, p);
  require_same_dimension(p, q);
  if (p == q) throw UsageError("closer_to: bisector of a point with itself");
  const Point mid = 0.5 * (p + q);
  return 2.0 * (p - q).dot(x - mid);
}

std::optional<Crossing> segment_bisector_crossing(const Point& w, const Point& target,
                                                  const Point& v, const Point& q) {
  require_same_dimension(w, target);
  require_same_dimension(v, q);
  require_same_dimension(w, v);
  if (w == target) throw UsageError("segment_bisector_crossing: empty segment");
  if (v == q) throw UsageError("segment_bisector_crossing: degenerate bisector");

  const Point dir = target - w;
  // Leaving-direction test: the walk has to move towards q.
  const double toward = dir.dot(q - v);
  if (toward <= 0.0) return std::nullopt;

  // closer_to along the segment is f0 - slope * lambda.
  const Point mid = 0.5 * (v + q);
  const double f0 = 2.0 * (v - q).dot(w - mid);
  const double slope = 2.0 * toward;
  const double lambda = f0 / slope;
  const double tol = kRelTol;
  if (lambda < -tol || lambda > 1.0 + tol) return std::nullopt;
  const double clamped = std::clamp(lambda, 0.0, 1.0);
  return Crossing{w + clamped * dir, clamped};
}

double diameter_estimate(std::span<const Point> points) {
  if (points.empty()) throw UsageError("diameter_estimate: empty point list");
  double far = 0.0;
  for (const Point& p : points) far = std::max(far, distance(points.front(), p));
  return 2.0 * far;
}

bool all_finite(const Point& p) { return p.allFinite(); }

double magnitude_scale(const Point& p) {
  return p.size() == 0 ? 1.0 : std::max(1.0, p.cwiseAbs().maxCoeff());
}

}  // namespace wsp
