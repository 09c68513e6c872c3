#include "wsp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wsp/ellipsoid.hpp"
#include "wsp/error.hpp"

namespace wsp {

void HalfspaceSet::add(Point normal, double offset) {
  if (!normals.empty() && normal.size() != normals.front().size()) {
    throw UsageError("HalfspaceSet: dimension mismatch");
  }
  normals.push_back(std::move(normal));
  offsets.push_back(offset);
}

void HalfspaceSet::append(const HalfspaceSet& other) {
  for (std::size_t i = 0; i < other.size(); ++i) add(other.normals[i], other.offsets[i]);
}

double HalfspaceSet::max_violation(const Point& x) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i) {
    const double n = normals[i].norm();
    if (n == 0.0) continue;
    worst = std::max(worst, (normals[i].dot(x) - offsets[i]) / n);
  }
  return worst;
}

bool HalfspaceSet::contains(const Point& x, double tolerance) const {
  return empty() || max_violation(x) <= tolerance;
}

HalfspaceSet HalfspaceSet::voronoi_cell(const Point& p, std::span<const Point> sites) {
  HalfspaceSet out;
  for (const Point& q : sites) {
    if (q == p) continue;
    Point a = q - p;
    const double b = a.dot(q + p) / 2.0;
    out.add(std::move(a), b);
  }
  return out;
}

double unit_ball_volume(int d) {
  return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

double cone_volume_lower_bound(double r, double s, double t, int d) {
  if (!(r > 0.0)) throw UsageError("cone_volume_lower_bound: r must be positive");
  if (!(s > r)) throw UsageError("cone_volume_lower_bound: requires s > r");
  if (d < 2) throw UsageError("cone_volume_lower_bound: requires d >= 2");
  if (!(t >= r && t < s)) throw UsageError("cone_volume_lower_bound: requires r <= t < s");
  return unit_ball_volume(d - 1) / d * std::pow(r, d - 1) * std::pow(s - t, d) /
         std::pow(s * s - r * r, (d - 1) / 2.0);
}

std::size_t ellipsoid_iteration_budget(int d, double tau_prune, double epsilon) {
  // Start: ball(p, r tau_prune). Smallest feasible region that must be
  // detected: sqrt(2/d) C_{d-1} (epsilon r / 2)^d. Both scale with r^d.
  const double start = unit_ball_volume(d) * std::pow(tau_prune, d);
  const double smallest =
      std::sqrt(2.0 / d) * unit_ball_volume(d - 1) * std::pow(epsilon / 2.0, d);
  const double ratio = std::max(start / smallest, std::numbers::e);
  return static_cast<std::size_t>(std::ceil(2.0 * 2.0 * d * std::log(ratio)));
}

namespace {

// Constraints moved into p's frame (y = x - p) and normalised to unit normals,
// so offsets are signed distances of the bounding hyperplanes from p.
struct LocalCell {
  int d = 0;
  std::vector<double> normals;  // row-major, size() x d
  std::vector<double> offsets;

  std::size_t size() const { return offsets.size(); }
  const double* row(std::size_t i) const { return normals.data() + i * d; }
};

LocalCell localize(const HalfspaceSet& cell, const Point& p) {
  LocalCell out;
  out.d = static_cast<int>(p.size());
  out.normals.reserve(cell.size() * p.size());
  out.offsets.reserve(cell.size());
  for (std::size_t i = 0; i < cell.size(); ++i) {
    const Point& a = cell.normals[i];
    if (a.size() != p.size()) throw UsageError("lp: constraint dimension mismatch");
    const double n = a.norm();
    if (n == 0.0) continue;
    for (int k = 0; k < out.d; ++k) out.normals.push_back(a[k] / n);
    out.offsets.push_back((cell.offsets[i] - a.dot(p)) / n);
  }
  return out;
}

double dot(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) s += a[k] * b[k];
  return s;
}

double feasibility_tolerance(const Point& p, double r, const LpSettings& settings) {
  return kRelTol * std::max(magnitude_scale(p), r * settings.tau_prune);
}

void validate_inputs(const Point& p, double r, const Point& c) {
  if (!(r > 0.0)) throw UsageError("lp: inradius r must be positive");
  if (c.size() != p.size()) throw UsageError("lp: direction dimension mismatch");
  if (std::abs(c.norm() - 1.0) > 1e-9) throw UsageError("lp: direction must be a unit vector");
}

// Ellipsoid method on {cell} + {c^T y >= t} in local coordinates.
std::optional<std::vector<double>> solve_local(const LocalCell& cell, const std::vector<double>& c,
                                               double t, double radius, std::size_t budget) {
  const int d = cell.d;
  Ellipsoid e(d, radius);
  std::vector<double> neg_c(d);
  for (int k = 0; k < d; ++k) neg_c[k] = -c[k];

  for (std::size_t it = 0; it <= budget; ++it) {
    const std::vector<double>& y = e.center();
    const double* a = nullptr;
    double b = 0.0;
    if (dot(c.data(), y.data(), d) < t) {
      a = neg_c.data();
      b = -t;
    } else {
      for (std::size_t i = 0; i < cell.size(); ++i) {
        if (dot(cell.row(i), y.data(), d) > cell.offsets[i]) {
          a = cell.row(i);
          b = cell.offsets[i];
          break;
        }
      }
    }
    if (a == nullptr) return y;
    if (it == budget) break;
    if (e.cut(a, b) != Ellipsoid::Cut::ok) return std::nullopt;
  }
  return std::nullopt;
}

// Moves a feasible y along c until it meets a constraint or the search ball.
void push_to_boundary(const LocalCell& cell, const std::vector<double>& c, double radius,
                      std::vector<double>& y) {
  const int d = cell.d;
  const double yc = dot(y.data(), c.data(), d);
  const double yy = dot(y.data(), y.data(), d);
  double step = -yc + std::sqrt(std::max(0.0, yc * yc - yy + radius * radius));
  for (std::size_t i = 0; i < cell.size(); ++i) {
    const double ac = dot(cell.row(i), c.data(), d);
    if (ac <= 0.0) continue;
    step = std::min(step, (cell.offsets[i] - dot(cell.row(i), y.data(), d)) / ac);
  }
  if (step > 0.0) {
    for (int k = 0; k < d; ++k) y[k] += step * c[k];
  }
}

bool locally_feasible(const LocalCell& cell, const std::vector<double>& y, double tol) {
  for (std::size_t i = 0; i < cell.size(); ++i) {
    if (dot(cell.row(i), y.data(), cell.d) > cell.offsets[i] + tol) return false;
  }
  return true;
}

Point to_global(const Point& p, const std::vector<double>& y) {
  Point x = p;
  for (Eigen::Index k = 0; k < x.size(); ++k) x[k] += y[static_cast<std::size_t>(k)];
  return x;
}

std::vector<double> to_vector(const Point& c) { return {c.data(), c.data() + c.size()}; }

Point extremal_local(const LocalCell& cell, const Point& p, double r, const Point& c,
                     const LpSettings& settings) {
  const int d = cell.d;
  const double radius = r * settings.tau_prune;
  const std::size_t budget = ellipsoid_iteration_budget(d, settings.tau_prune, settings.epsilon);
  const double tol = feasibility_tolerance(p, r, settings);
  const auto grid = static_cast<long>(std::ceil(2.0 * (settings.tau_prune - 1.0) / settings.epsilon));
  const double spacing = (radius - r) / static_cast<double>(grid);
  const std::vector<double> cv = to_vector(c);
  auto threshold = [&](long i) { return r + spacing * static_cast<double>(i); };

  // j: highest index known to have produced a point (0 is the implicit
  // fallback), k: lowest index that reported NOT FOUND (grid + 1 sentinel).
  long j = 0;
  long k = grid + 1;
  std::vector<double> best(cv);
  for (double& v : best) v *= r;

  auto probe = [&](long i) {
    auto y = solve_local(cell, cv, threshold(i), radius, budget);
    if (!y) return false;
    std::vector<double> pushed = *y;
    push_to_boundary(cell, cv, radius, pushed);
    if (locally_feasible(cell, pushed, tol)) *y = std::move(pushed);
    const double reached = dot(y->data(), cv.data(), d);
    const long at = std::clamp(static_cast<long>(std::floor((reached - r) / spacing)), i, k - 1);
    j = std::max(j, at);
    best = std::move(*y);
    return true;
  };

  // Gallop upward from the bottom of the grid, then bisect once a NOT FOUND
  // brackets the answer. Terminates with j found and j + 1 NOT FOUND (or j at
  // the top of the grid), which is what the (1 - epsilon) bound needs.
  bool galloping = true;
  long stride = 1;
  while (k - j > 1) {
    const long i = galloping ? std::min(j + stride, k - 1) : (j + k + 1) / 2;
    if (probe(i)) {
      stride *= 2;
    } else {
      k = i;
      galloping = false;
    }
  }
  return to_global(p, best);
}

}  // namespace

std::optional<Point> ellipsoid_feasible(const HalfspaceSet& cell, const Point& p, double r,
                                        const Point& c, double t, const LpSettings& settings) {
  validate_inputs(p, r, c);
  const LocalCell local = localize(cell, p);
  const std::size_t budget =
      ellipsoid_iteration_budget(local.d, settings.tau_prune, settings.epsilon);
  auto y = solve_local(local, to_vector(c), t, r * settings.tau_prune, budget);
  if (!y) return std::nullopt;
  Point x = to_global(p, *y);
  if (!cell.contains(x, feasibility_tolerance(p, r, settings)) || c.dot(x - p) < t) {
    throw InternalError("ellipsoid_feasible: returned point failed verification");
  }
  return x;
}

Point extremal_in_direction(const HalfspaceSet& cell, const Point& p, double r, const Point& c,
                            const LpSettings& settings) {
  validate_inputs(p, r, c);
  return extremal_local(localize(cell, p), p, r, c, settings);
}

Point approximate_farthest_corner(const HalfspaceSet& cell, const Point& p, double r,
                                  const Cage& cage, const LpSettings& settings) {
  if (cage.dimension != p.size()) throw UsageError("approximate_farthest_corner: cage dimension");
  if (!(r > 0.0)) throw UsageError("approximate_farthest_corner: r must be positive");
  const LocalCell local = localize(cell, p);
  Point z = p;
  double far = 0.0;
  for (const Point& c : cage.directions) {
    Point w = extremal_local(local, p, r, c, settings);
    const double dw = (w - p).norm();
    if (dw > far) {
      far = dw;
      z = std::move(w);
    }
  }
  return z;
}

}  // namespace wsp
