#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "support.hpp"
#include "wsp/error.hpp"
#include "wsp/oracle.hpp"
#include "wsp/refine.hpp"

using namespace wsp;
using test::pt;

namespace {

// Classical check: (i,j) is a Delaunay edge iff some triangle through it has
// an empty circumcircle. O(n^4).
std::set<oracle::IndexPair> circumcircle_edges(const std::vector<Point>& S) {
  std::set<oracle::IndexPair> out;
  const std::size_t n = S.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        const double ax = S[a][0], ay = S[a][1], bx = S[b][0], by = S[b][1], cx = S[c][0],
                     cy = S[c][1];
        const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
        if (std::abs(d) < 1e-12) continue;
        const double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
        const Point o = pt({(a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d,
                            (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d});
        const double rr = squared_distance(o, S[a]);
        bool empty = true;
        for (std::size_t k = 0; k < n && empty; ++k) {
          if (k == a || k == b || k == c) continue;
          if (squared_distance(o, S[k]) < rr) empty = false;
        }
        if (!empty) continue;
        out.emplace(a, b);
        out.emplace(a, c);
        out.emplace(b, c);
      }
  return out;
}

// Every d-subset of the constraints solved as equalities.
std::vector<Point> subset_vertices(const HalfspaceSet& h, int d) {
  std::vector<Point> out;
  const std::size_t m = h.size();
  std::vector<int> pick(m, 0);
  std::fill(pick.end() - d, pick.end(), 1);
  do {
    Eigen::MatrixXd A(d, d);
    Eigen::VectorXd b(d);
    int row = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!pick[i]) continue;
      A.row(row) = h.normals[i].transpose();
      b[row] = h.offsets[i];
      ++row;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (lu.rank() < d) continue;
    const Point x = lu.solve(b);
    if (h.max_violation(x) > 1e-9) continue;
    bool dup = false;
    for (const Point& y : out) dup = dup || distance(x, y) < 1e-9;
    if (!dup) out.push_back(x);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

double max_norm_from(const std::vector<Point>& vs, const Point& p) {
  double best = 0.0;
  for (const Point& v : vs) best = std::max(best, distance(v, p));
  return best;
}

HalfspaceSet ball_box(const Point& center, double half) {
  HalfspaceSet h;
  for (int k = 0; k < center.size(); ++k) {
    Point e = Point::Zero(center.size());
    e[k] = 1.0;
    h.add(e, center[k] + half);
    h.add(-e, -center[k] + half);
  }
  return h;
}

}  // namespace

TEST_CASE("brute_nn") {
  CHECK(oracle::brute_nn(pt({0, 0}), std::vector<Point>{pt({1, 0}), pt({5, 0})}) == 0);
  CHECK(oracle::brute_nn(pt({0, 0}), std::vector<Point>{pt({0, 0}), pt({5, 0}), pt({3, 0})}) == 2);
  CHECK(oracle::brute_nn(pt({0, 0}), std::vector<Point>{pt({1, 0}), pt({-1, 0})}) == 0);
  CHECK_THROWS_AS(oracle::brute_nn(pt({0, 0}), std::vector<Point>{}), UsageError);
  CHECK_THROWS_AS(oracle::brute_nn(pt({0, 0}), std::vector<Point>{pt({0, 0})}), UsageError);
}

TEST_CASE("brute_nn agrees across shuffles") {
  auto S = test::uniform_points(100, 2, 1);
  const auto queries = test::uniform_points(50, 2, 2);
  std::mt19937_64 rng(3);
  std::vector<std::size_t> perm(S.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Point> shuffled;
  for (std::size_t i : perm) shuffled.push_back(S[i]);
  for (const Point& q : queries) {
    CHECK(perm[oracle::brute_nn(q, shuffled)] == oracle::brute_nn(q, S));
  }
}

TEST_CASE("feature_size") {
  const std::vector<Point> S{pt({0}), pt({3}), pt({10})};
  CHECK(oracle::feature_size(pt({0}), S) == 3.0);
  CHECK(oracle::feature_size(pt({5}), S) == 5.0);
  CHECK_THROWS_AS(oracle::feature_size(pt({0}), std::vector<Point>{pt({1})}), UsageError);

  const auto P = test::uniform_points(30, 2, 4);
  const auto X = test::uniform_points(200, 2, 5);
  for (std::size_t i = 0; i + 1 < X.size(); ++i) {
    CHECK(std::abs(oracle::feature_size(X[i], P) - oracle::feature_size(X[i + 1], P)) <=
          distance(X[i], X[i + 1]) + 1e-12);
  }
}

TEST_CASE("exact_delaunay_edges small cases") {
  auto dt = oracle::exact_delaunay_edges(std::vector<Point>{pt({0, 0}), pt({1, 1})});
  CHECK(dt.edges == std::set<oracle::IndexPair>{{0, 1}});

  const std::vector<Point> tri{pt({0, 0}), pt({2, 0}), pt({1, 2})};
  dt = oracle::exact_delaunay_edges(tri);
  CHECK(dt.edges.size() == 3);

  std::vector<Point> four = tri;
  four.push_back(pt({1, 0.5}));
  dt = oracle::exact_delaunay_edges(four);
  CHECK(dt.edges.size() == 6);
  CHECK(dt.edges == circumcircle_edges(four));

  // Cocircular square: the diagonals are degenerate.
  dt = oracle::exact_delaunay_edges(
      std::vector<Point>{pt({0, 0}), pt({1, 0}), pt({1, 1}), pt({0, 1})});
  CHECK(dt.edges.size() == 4);
  CHECK(dt.degenerate.size() == 2);
}

TEST_CASE("exact_delaunay_edges matches empty circumcircles") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto S = test::uniform_points(8 + 2 * seed, 2, 100 + seed);
    const auto dt = oracle::exact_delaunay_edges(S);
    CHECK(dt.degenerate.empty());
    CHECK(dt.edges == circumcircle_edges(S));
  }
}

TEST_CASE("delaunay_slack sign") {
  const std::vector<Point> S{pt({0, 0}), pt({2, 0}), pt({1, 2}), pt({1, 0.5})};
  CHECK(oracle::delaunay_slack(S, 0, 3) > 1e-6);
  // (0,0)-(2,0) is still an edge; a far point behind the interior one is not.
  std::vector<Point> T{pt({0, 0}), pt({1, 0}), pt({2, 0}), pt({1, 5}), pt({1, -5})};
  CHECK(oracle::delaunay_slack(T, 0, 2) < -1e-6);
}

TEST_CASE("square and cube cells") {
  std::vector<Point> S{pt({0, 0}), pt({2, 0}), pt({-2, 0}), pt({0, 2}), pt({0, -2})};
  auto vs = oracle::voronoi_cell_vertices(0, S, HalfspaceSet{});
  CHECK(vs.size() == 4);
  for (const Point& v : vs) {
    CHECK(std::abs(std::abs(v[0]) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(v[1]) - 1.0) < 1e-12);
  }
  CHECK(oracle::exact_aspect(0, S, HalfspaceSet{}) == doctest::Approx(std::sqrt(2.0)));

  std::vector<Point> C{pt({0, 0, 0})};
  for (int k = 0; k < 3; ++k)
    for (double s : {2.0, -2.0}) {
      Point x = Point::Zero(3);
      x[k] = s;
      C.push_back(x);
    }
  vs = oracle::voronoi_cell_vertices(0, C, HalfspaceSet{});
  CHECK(vs.size() == 8);
  CHECK(max_norm_from(vs, C[0]) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("hexagon and needle aspects") {
  std::vector<Point> H{pt({0, 0})};
  for (int k = 0; k < 6; ++k) {
    const double a = std::numbers::pi * k / 3.0;
    H.push_back(pt({2 * std::cos(a), 2 * std::sin(a)}));
  }
  CHECK(oracle::exact_aspect(0, H, HalfspaceSet{}) == doctest::Approx(2.0 / std::sqrt(3.0)));

  std::vector<Point> N{pt({0, 0}), pt({0, 0.1}), pt({0, -0.1}), pt({30, 0}), pt({-30, 0})};
  CHECK(oracle::exact_aspect(0, N, HalfspaceSet{}) > 100.0);

  // Unbounded without a clip.
  CHECK_THROWS_AS(oracle::exact_aspect(0, std::vector<Point>{pt({0, 0}), pt({1, 0})}, HalfspaceSet{}),
                  UsageError);
  CHECK(oracle::exact_aspect(0, std::vector<Point>{pt({0, 0}), pt({2, 0})},
                             ball_box(pt({0, 0}), 3.0)) ==
        doctest::Approx(std::hypot(3.0, 3.0)));
}

TEST_CASE("vertex enumeration matches the d-subset method") {
  std::mt19937_64 rng(31);
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto S = test::uniform_points(12, d, 1000 + trial);
      const HalfspaceSet clip = ball_box(S[0], 2.0);
      auto fast = oracle::voronoi_cell_vertices(0, S, clip);
      HalfspaceSet h;
      std::vector<Point> others(S.begin() + 1, S.end());
      h = HalfspaceSet::voronoi_cell(S[0], others);
      h.append(clip);
      auto slow = subset_vertices(h, d);
      CHECK(fast.size() == slow.size());
      CHECK(max_norm_from(fast, S[0]) == doctest::Approx(max_norm_from(slow, S[0])).epsilon(1e-9));
      for (const Point& v : fast) {
        double best = 1e300;
        for (const Point& w : slow) best = std::min(best, distance(v, w));
        CHECK(best < 1e-8);
        // Simple polytope: each vertex is tight on exactly d constraints.
        int tight = 0;
        for (std::size_t i = 0; i < h.size(); ++i)
          tight += std::abs(h.normals[i].dot(v) - h.offsets[i]) / h.normals[i].norm() < 1e-9;
        CHECK(tight == d);
      }
    }
  }
}

TEST_CASE("aspect is invariant under rigid motions and shuffles") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    auto S = test::uniform_points(15, 2, 2000 + trial);
    const HalfspaceSet clip = ball_box(pt({0.5, 0.5}), 1.0);
    const double base = oracle::exact_aspect(0, S, clip);

    const double angle = std::uniform_real_distribution<double>(0, 6.28)(rng);
    Eigen::Matrix2d R;
    R << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    const Point shift = pt({3.0, -7.0});
    std::vector<Point> moved;
    for (const Point& x : S) moved.push_back(R * x + shift);
    HalfspaceSet moved_clip;
    for (std::size_t i = 0; i < clip.size(); ++i) {
      const Point a = R * clip.normals[i];
      moved_clip.add(a, clip.offsets[i] + a.dot(shift));
    }
    CHECK(oracle::exact_aspect(0, moved, moved_clip) == doctest::Approx(base).epsilon(1e-7));

    std::vector<Point> shuffled(S.begin() + 1, S.end());
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    shuffled.push_back(S[0]);
    CHECK(oracle::exact_aspect(shuffled.size() - 1, shuffled, clip) ==
          doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("auditor accepts finished meshes and flags a removed Delaunay edge") {
  const RunResult run = well_spaced_points(test::uniform_points(25, 2, 8), Config{});
  oracle::DelaunayAuditor auditor;
  CHECK(auditor.audit(*run.store).empty());

  MeshStore broken = *run.store;
  const auto ids = broken.alive_in_layer(0);
  std::vector<Point> pts;
  for (std::size_t id : ids) pts.push_back(broken.vertex(id).point);
  const auto dt = oracle::exact_delaunay_edges(pts);
  std::size_t a = kNoIndex, b = kNoIndex;
  for (const auto& [i, j] : dt.edges) {
    const auto ki = broken.vertex(ids[i]).kind;
    const auto kj = broken.vertex(ids[j]).kind;
    if (ki != VertexKind::cage && kj != VertexKind::cage) {
      a = ids[i];
      b = ids[j];
      break;
    }
  }
  REQUIRE(a != kNoIndex);
  broken.remove_edge(a, b);
  const auto found = auditor.audit(broken);
  REQUIRE_FALSE(found.empty());
  bool names_pair = false;
  for (const auto& v : found) {
    names_pair = names_pair || (v.vertex == a && v.closer_site == b) ||
                 (v.vertex == b && v.closer_site == a);
  }
  CHECK(names_pair);
  // A fresh auditor agrees with the cached one.
  oracle::DelaunayAuditor fresh;
  CHECK_FALSE(fresh.audit(broken).empty());
}
