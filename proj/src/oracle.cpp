#include "wsp/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wsp/error.hpp"

namespace wsp::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Polytope vertex enumeration by successive clipping, in coordinates local to
// a point known to be inside.

struct Plane {
  Point normal;  // unit
  double offset;
};

using Polygon = std::vector<Point>;

double side(const Plane& h, const Point& y) { return h.normal.dot(y) - h.offset; }

// Sutherland-Hodgman against one plane. Points within `tol` of the plane
// count as inside and are also reported through `section`.
Polygon clip_polygon(const Polygon& poly, const Plane& h, double tol, std::vector<Point>* section) {
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    const double fa = side(h, a);
    const double fb = side(h, b);
    if (fa <= tol) {
      out.push_back(a);
      if (section && fa >= -tol) section->push_back(a);
    }
    if ((fa < -tol && fb > tol) || (fa > tol && fb < -tol)) {
      Point x = a + (fa / (fa - fb)) * (b - a);
      out.push_back(x);
      if (section) section->push_back(std::move(x));
    }
  }
  return out;
}

void dedupe(std::vector<Point>& pts, double tol) {
  std::vector<Point> kept;
  for (Point& p : pts) {
    bool fresh = true;
    for (const Point& q : kept) {
      if ((p - q).lpNorm<Eigen::Infinity>() <= tol) {
        fresh = false;
        break;
      }
    }
    if (fresh) kept.push_back(std::move(p));
  }
  pts = std::move(kept);
}

std::vector<Point> clip_1d(const std::vector<Plane>& planes, double box) {
  double lo = -box;
  double hi = box;
  for (const Plane& h : planes) {
    const double a = h.normal[0];
    if (a > 0) hi = std::min(hi, h.offset / a);
    if (a < 0) lo = std::max(lo, h.offset / a);
  }
  if (lo > hi) return {};
  std::vector<Point> out{Point::Constant(1, lo), Point::Constant(1, hi)};
  dedupe(out, 1e-12 * box);
  return out;
}

std::vector<Point> clip_2d(const std::vector<Plane>& planes, double box, double tol) {
  Polygon poly;
  for (auto [x, y] : {std::pair{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}) {
    Point p(2);
    p << x * box, y * box;
    poly.push_back(p);
  }
  for (const Plane& h : planes) {
    poly = clip_polygon(poly, h, tol, nullptr);
    if (poly.empty()) return {};
  }
  dedupe(poly, 1e3 * tol);
  return poly;
}

Polygon order_face(std::vector<Point> pts, const Point& normal, double tol) {
  dedupe(pts, 1e3 * tol);
  if (pts.size() < 3) return {};
  // Any basis of the plane orthogonal to `normal`.
  Eigen::Vector3d n(normal[0], normal[1], normal[2]);
  Eigen::Vector3d seed = std::abs(n.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  Eigen::Vector3d u = n.cross(seed).normalized();
  Eigen::Vector3d v = n.cross(u);
  Point centroid = Point::Zero(3);
  for (const Point& p : pts) centroid += p;
  centroid /= static_cast<double>(pts.size());
  std::vector<std::pair<double, std::size_t>> angle;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point rel = pts[i] - centroid;
    angle.emplace_back(std::atan2(rel.dot(v), rel.dot(u)), i);
  }
  std::sort(angle.begin(), angle.end());
  Polygon out;
  for (const auto& [a, i] : angle) out.push_back(pts[i]);
  return out;
}

std::vector<Point> clip_3d(const std::vector<Plane>& planes, double box, double tol) {
  std::vector<Polygon> faces;
  for (int axis = 0; axis < 3; ++axis) {
    for (int sign : {-1, 1}) {
      std::vector<Point> corners;
      for (int a : {-1, 1}) {
        for (int b : {-1, 1}) {
          Point p(3);
          p[axis] = sign * box;
          p[(axis + 1) % 3] = a * box;
          p[(axis + 2) % 3] = b * box;
          corners.push_back(p);
        }
      }
      Point normal = Point::Zero(3);
      normal[axis] = sign;
      faces.push_back(order_face(corners, normal, tol));
    }
  }
  for (const Plane& h : planes) {
    std::vector<Polygon> next;
    std::vector<Point> section;
    for (const Polygon& f : faces) {
      Polygon g = clip_polygon(f, h, tol, &section);
      if (g.size() >= 3) next.push_back(std::move(g));
    }
    Polygon cap = order_face(std::move(section), h.normal, tol);
    if (cap.size() >= 3) next.push_back(std::move(cap));
    faces = std::move(next);
    if (faces.empty()) return {};
  }
  std::vector<Point> out;
  for (const Polygon& f : faces) out.insert(out.end(), f.begin(), f.end());
  dedupe(out, 1e3 * tol);
  return out;
}

// Every d-subset of boundaries, solved and filtered.
std::vector<Point> enumerate_subsets(const std::vector<Plane>& planes, int d, double box, double tol) {
  std::vector<Plane> all = planes;
  for (int k = 0; k < d; ++k) {
    for (int sign : {-1, 1}) {
      Point n = Point::Zero(d);
      n[k] = sign;
      all.push_back({n, box});
    }
  }
  std::vector<Point> out;
  std::vector<std::size_t> pick(static_cast<std::size_t>(d));
  std::iota(pick.begin(), pick.end(), 0);
  const std::size_t m = all.size();
  if (m < static_cast<std::size_t>(d)) return out;
  while (true) {
    Eigen::MatrixXd A(d, d);
    Eigen::VectorXd b(d);
    for (int r = 0; r < d; ++r) {
      A.row(r) = all[pick[r]].normal.transpose();
      b[r] = all[pick[r]].offset;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (lu.rank() == d) {
      Point x = lu.solve(b);
      bool ok = true;
      for (const Plane& h : all) {
        if (side(h, x) > tol) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(std::move(x));
    }
    int k = d - 1;
    while (k >= 0 && pick[k] == m - static_cast<std::size_t>(d - k)) --k;
    if (k < 0) break;
    ++pick[k];
    for (int j = k + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  dedupe(out, 1e3 * tol);
  return out;
}

std::vector<Point> clip_local(const std::vector<Plane>& planes, int d, double box) {
  const double tol = 1e-12 * box;
  switch (d) {
    case 1: return clip_1d(planes, box);
    case 2: return clip_2d(planes, box, tol);
    case 3: return clip_3d(planes, box, tol);
    default: return enumerate_subsets(planes, d, box, tol);
  }
}

std::vector<Plane> localize(const HalfspaceSet& region, const Point& inside) {
  std::vector<Plane> planes;
  for (std::size_t i = 0; i < region.size(); ++i) {
    const double n = region.normals[i].norm();
    if (n == 0.0) continue;
    planes.push_back({region.normals[i] / n, (region.offsets[i] - region.normals[i].dot(inside)) / n});
  }
  return planes;
}

// Bisector of site and q in site-local coordinates, formed from the
// difference directly so that tiny cells far from the origin stay accurate.
Plane local_bisector(const Point& site, const Point& q) {
  const Point diff = q - site;
  const double n = diff.norm();
  return {diff / n, n / 2.0};
}

// Vertices in local coordinates, or nullopt when the region reaches the box.
std::optional<std::vector<Point>> local_vertices(const std::vector<Plane>& planes, int d) {
  double reach = 0.0;
  for (const Plane& h : planes) reach = std::max(reach, std::abs(h.offset));
  if (reach == 0.0) reach = 1.0;
  // Wide first pass to detect unboundedness and measure the extent, then a
  // tight pass for accuracy.
  double box = 1e6 * reach;
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<Point> v = clip_local(planes, d, box);
    double extent = 0.0;
    for (const Point& x : v) extent = std::max(extent, x.lpNorm<Eigen::Infinity>());
    if (extent >= box * (1.0 - 1e-9)) return std::nullopt;
    if (pass == 1) return v;
    box = 4.0 * std::max(extent, 1e-300);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Dense simplex: maximise c^T z subject to A z <= b, z >= 0, with b >= 0 so
// that z = 0 is feasible. Bland's rule.

double simplex_max(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  T.topLeftCorner(m, n) = A;
  T.block(0, n, m, m).setIdentity();
  T.col(n + m).head(m) = b;
  T.row(m).head(n) = -c.transpose();
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  std::iota(basis.begin(), basis.end(), n);
  constexpr double eps = 1e-12;
  for (int guard = 0; guard < 100000; ++guard) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (T(m, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return T(m, n + m);
    Eigen::Index leave = -1;
    double best = kInf;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (T(i, enter) > eps) {
        const double ratio = T(i, n + m) / T(i, enter);
        if (ratio < best - eps ||
            (ratio <= best + eps && leave >= 0 && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return kInf;
    T.row(leave) /= T(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != leave && T(i, enter) != 0.0) T.row(i) -= T(i, enter) * T.row(leave);
    }
    basis[leave] = enter;
  }
  throw InternalError("simplex: iteration guard reached");
}

}  // namespace

std::size_t brute_nn(const Point& p, std::span<const Point> S) {
  std::size_t best = kNoIndex;
  double best_d = kInf;
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (S[i] == p) continue;
    const double d = squared_distance(p, S[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  if (best == kNoIndex) throw UsageError("brute_nn: no candidate points");
  return best;
}

double feature_size(const Point& x, std::span<const Point> S) {
  if (S.size() < 2) throw UsageError("feature_size: need at least two points");
  double first = kInf;
  double second = kInf;
  for (const Point& s : S) {
    const double d = distance(x, s);
    if (d < first) {
      second = first;
      first = d;
    } else if (d < second) {
      second = d;
    }
  }
  return second;
}

double delaunay_slack(std::span<const Point> S, std::size_t i, std::size_t j) {
  if (i == j || i >= S.size() || j >= S.size()) throw UsageError("delaunay_slack: bad pair");
  const int d = static_cast<int>(S[i].size());
  Point center = Point::Zero(d);
  for (const Point& s : S) center += s;
  center /= static_cast<double>(S.size());
  double scale = 0.0;
  for (const Point& s : S) scale = std::max(scale, distance(s, center));
  if (scale == 0.0) throw UsageError("delaunay_slack: all points coincide");
  auto norm = [&](const Point& s) -> Point { return (s - center) / scale; };

  const Point p = norm(S[i]);
  const Point q = norm(S[j]);
  const Point mid = 0.5 * (p + q);
  const Point axis = (q - p).normalized();
  // Orthonormal basis of the bisector's direction space.
  const Eigen::MatrixXd axis_column = axis;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(axis_column);
  const Eigen::MatrixXd full = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd basis = full.rightCols(d - 1);

  constexpr double box = 1e3;
  constexpr double cap = 1.0;
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> gaps;
  for (std::size_t k = 0; k < S.size(); ++k) {
    if (k == i || k == j) continue;
    const Point r = norm(S[k]);
    // d(x,r)^2 - d(x,p)^2 = gap + a^T w on x = mid + basis w.
    rows.push_back(2.0 * basis.transpose() * (p - r));
    gaps.push_back((mid - r).squaredNorm() - (mid - p).squaredNorm());
  }
  // Shift to w' = w + box, s' = s - low so that the origin is feasible.
  double low = -1.0;
  for (std::size_t k = 0; k < rows.size(); ++k) low = std::min(low, gaps[k] - box * rows[k].sum() - 1.0);

  const Eigen::Index nv = d;  // w' (d - 1) and s'
  const Eigen::Index m = static_cast<Eigen::Index>(rows.size()) + (d - 1) + 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, nv);
  Eigen::VectorXd b(m);
  Eigen::Index row = 0;
  for (std::size_t k = 0; k < rows.size(); ++k, ++row) {
    // s - a^T w <= gap
    A.row(row).head(d - 1) = -rows[k].transpose();
    A(row, d - 1) = 1.0;
    b[row] = gaps[k] - low - box * rows[k].sum();
  }
  for (int k = 0; k < d - 1; ++k, ++row) {
    A(row, k) = 1.0;
    b[row] = 2.0 * box;
  }
  A(row, d - 1) = 1.0;
  b[row] = cap - low;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(nv);
  c[d - 1] = 1.0;
  return simplex_max(A, b, c) + low;
}

DelaunayEdges exact_delaunay_edges(std::span<const Point> S) {
  if (S.size() < 2) throw UsageError("exact_delaunay_edges: need at least two points");
  DelaunayEdges out;
  constexpr double tol = 1e-9;
  for (std::size_t i = 0; i < S.size(); ++i) {
    for (std::size_t j = i + 1; j < S.size(); ++j) {
      const double s = delaunay_slack(S, i, j);
      if (s > tol) {
        out.edges.emplace(i, j);
      } else if (s >= -tol) {
        out.degenerate.emplace(i, j);
      }
    }
  }
  return out;
}

std::vector<Point> polytope_vertices(const HalfspaceSet& region, const Point& inside) {
  auto local = local_vertices(localize(region, inside), static_cast<int>(inside.size()));
  if (!local) throw UsageError("polytope_vertices: region is unbounded");
  for (Point& v : *local) v += inside;
  return *local;
}

namespace {

// Cell corners relative to S[p].
std::vector<Point> local_cell(std::size_t p, std::span<const Point> S, const HalfspaceSet& clip) {
  if (p >= S.size()) throw UsageError("voronoi_cell_vertices: index out of range");
  const Point& site = S[p];
  const int d = static_cast<int>(site.size());
  std::vector<std::pair<double, std::size_t>> others;
  for (std::size_t k = 0; k < S.size(); ++k) {
    if (k != p && S[k] != site) others.emplace_back(distance(site, S[k]), k);
  }
  std::sort(others.begin(), others.end());

  // Sites beyond twice the outradius of a partial cell cannot cut it, so
  // the candidate set only has to grow until it contains all of them.
  std::size_t k = std::min<std::size_t>(others.size(), 8 * static_cast<std::size_t>(d));
  while (true) {
    std::vector<Plane> planes = localize(clip, site);
    for (std::size_t i = 0; i < k; ++i) planes.push_back(local_bisector(site, S[others[i].second]));
    auto local = local_vertices(planes, d);
    if (!local) {
      if (k == others.size()) throw UsageError("voronoi_cell_vertices: cell is unbounded");
      k = std::min(others.size(), 2 * k + 1);
      continue;
    }
    double reach = 0.0;
    for (const Point& v : *local) reach = std::max(reach, v.norm());
    std::size_t needed = k;
    while (needed < others.size() && others[needed].first <= 2.0 * reach * (1.0 + 1e-9)) ++needed;
    if (needed == k) {
      if (local->empty()) throw InternalError("voronoi_cell_vertices: empty cell");
      return *local;
    }
    k = needed;
  }
}

}  // namespace

std::vector<Point> voronoi_cell_vertices(std::size_t p, std::span<const Point> S,
                                         const HalfspaceSet& clip) {
  std::vector<Point> corners = local_cell(p, S, clip);
  for (Point& v : corners) v += S[p];
  return corners;
}

double exact_aspect(std::size_t p, std::span<const Point> S, const HalfspaceSet& clip) {
  double outradius = 0.0;
  for (const Point& v : local_cell(p, S, clip)) outradius = std::max(outradius, v.norm());
  const double inradius = distance(S[p], S[brute_nn(S[p], S)]) / 2.0;
  return outradius / inradius;
}

std::vector<DelaunayAuditor::Violation> DelaunayAuditor::audit(const MeshStore& store) {
  std::vector<Violation> found;
  const std::size_t total = store.vertex_count();
  auto check = [&](std::size_t u, const std::vector<Point>& corners, std::size_t from) {
    const VertexRecord& vu = store.vertex(u);
    for (std::size_t w = from; w < total; ++w) {
      const VertexRecord& vw = store.vertex(w);
      if (w == u || !vw.alive || vw.layer != vu.layer) continue;
      for (const Point& x : corners) {
        // Corners are stored relative to u.
        const Point xw = x - (vw.point - vu.point);
        if (xw.squaredNorm() < x.squaredNorm() * (1.0 - 1e-9)) {
          found.push_back({u, w, x + vu.point});
          return;
        }
      }
    }
  };

  for (auto it = cache_.begin(); it != cache_.end();) {
    if (!store.vertex(it->first).alive) {
      it = cache_.erase(it);
    } else {
      ++it;
    }
  }
  for (std::size_t u = 0; u < total; ++u) {
    const VertexRecord& vu = store.vertex(u);
    if (!vu.alive || vu.kind == VertexKind::cage) continue;
    auto it = cache_.find(u);
    if (it != cache_.end() && it->second.neighbors == vu.neighbors) {
      check(u, it->second.corners, seen_vertices_);
      continue;
    }
    std::vector<Plane> planes;
    for (std::size_t w : vu.neighbors) planes.push_back(local_bisector(vu.point, store.vertex(w).point));
    auto local = local_vertices(planes, store.dimension());
    Entry entry{vu.neighbors, vu.point, {}};
    if (local) {
      entry.corners = std::move(*local);
    } else {
      // Sites outside the cage hull have unbounded cells; audit the part
      // within a box well beyond the cage.
      const Layer& layer = store.layer(vu.layer);
      HalfspaceSet box;
      for (int k = 0; k < store.dimension(); ++k) {
        for (double sign : {-1.0, 1.0}) {
          Point n = Point::Zero(store.dimension());
          n[k] = sign;
          box.add(n, sign * layer.center[k] + 4.0 * layer.cage_radius);
        }
      }
      const std::vector<Plane> walls = localize(box, vu.point);
      planes.insert(planes.end(), walls.begin(), walls.end());
      local = local_vertices(planes, store.dimension());
      if (!local) throw InternalError("DelaunayAuditor: boxed cell unbounded");
      entry.corners = std::move(*local);
    }
    check(u, entry.corners, 0);
    cache_[u] = std::move(entry);
  }
  seen_vertices_ = total;
  return found;
}

}  // namespace wsp::oracle
