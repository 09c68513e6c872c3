#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "wsp/error.hpp"
#include "wsp/oracle.hpp"
#include "wsp/refine.hpp"
#include "wsp/verify.hpp"

using namespace wsp;
using test::pt;

namespace {

void check_inputs_survive(const RunResult& run, std::span<const Point> input) {
  REQUIRE(run.input_copy.size() == input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    const VertexRecord& v = run.store->vertex(run.input_copy[i]);
    CHECK(v.alive);
    CHECK(v.kind == VertexKind::input);
    CHECK(v.point == input[i]);
  }
  CHECK(run.stats.m_output >= run.stats.n_input);
}

void check_no_cage_deleted(const MeshStore& store) {
  for (std::size_t l = 0; l < store.layer_count(); ++l)
    for (std::size_t c : store.layer(l).cage_vertices) CHECK(store.vertex(c).alive);
}

std::vector<Point> clusters() {
  return {pt({0, 0}), pt({1e-6, 0}), pt({1, 0}), pt({1 + 1e-6, 0})};
}

}  // namespace

TEST_CASE("two points") {
  Config config;
  config.root_cage_scale = 2.0;
  const std::vector<Point> input{pt({0, 0}), pt({10, 0})};
  const RunResult run = well_spaced_points(input, config);
  check_inputs_survive(run, input);
  CHECK(run.stats.layer_count == 1);
  const Layer& root = run.store->layer(0);
  CHECK(root.cage_radius == doctest::Approx(20.0));
  CHECK(root.center == input[0]);
}

TEST_CASE("twenty random points pass every oracle check") {
  Config config;
  config.seed = 1;
  const auto input = test::uniform_points(20, 2, 1);
  const RunResult run = well_spaced_points(input, config);
  check_inputs_survive(run, input);
  const VerifyReport report = verify(*run.store);
  CHECK(report.delaunay.passed());
  CHECK(report.quality.passed());
  CHECK(report.feature_size.passed());
  CHECK(report.quality.worst <= 8.0 / 0.7875);
  // Measured ratios are refined below the threshold.
  for (std::size_t v = 0; v < run.store->vertex_count(); ++v) {
    const VertexRecord& rec = run.store->vertex(v);
    if (rec.alive && rec.kind != VertexKind::cage) CHECK(rec.aspect() <= config.tau_threshold());
  }
}

TEST_CASE("two clusters open child layers") {
  const auto input = clusters();
  const RunResult run = well_spaced_points(input, Config{});
  check_inputs_survive(run, input);
  CHECK(run.stats.layer_count >= 3);
  const MeshStore& store = *run.store;
  for (std::size_t l = 1; l < store.layer_count(); ++l) {
    const Layer& layer = store.layer(l);
    REQUIRE(layer.parent != kNoIndex);
    const VertexRecord& shared = store.vertex(layer.shared_vertex);
    const VertexRecord& original = store.vertex(layer.parent_vertex);
    CHECK(shared.point == original.point);
    CHECK(shared.layer == l);
    CHECK(original.layer == layer.parent);
    CHECK(layer.center == shared.point);
  }
  // Each layer's graph is its own component.
  CHECK(run.graph.component_count() == store.layer_count());
  for (const auto& [a, b] : run.graph.edges) CHECK(store.vertex(a).layer == store.vertex(b).layer);
  CHECK(verify(store).passed());
}

TEST_CASE("new layer geometry") {
  // q = (0,0), p = (0.01,0): the cage goes around q with radius 0.02.
  const std::vector<Point> input{pt({0, 0}), pt({1, 0}), pt({0.01, 0}), pt({-0.005, 0})};
  RunOptions options;
  std::vector<RunEvent> walks;
  options.observer = [&](const MeshStore&, const RunEvent& e) {
    if (e.kind == RunEvent::Kind::walk) walks.push_back(e);
  };
  const RunResult run = well_spaced_points(input, Config{}, options);
  REQUIRE(run.stats.layer_count >= 2);
  const Layer& child = run.store->layer(1);
  CHECK(child.parent == 0);
  CHECK(child.center == input[0]);
  CHECK(child.cage_radius == doctest::Approx(0.02));
  CHECK(child.cage_vertices.size() <= 64);
  // The fourth point's predecessor is (0,0); it walks from the child copy.
  REQUIRE(walks.size() == 2);
  CHECK(run.order.predecessor[3] == 0);
  CHECK(run.store->vertex(walks[1].start).layer == 1);
  CHECK(run.store->vertex(run.input_copy[3]).layer == 1);
}

TEST_CASE("snapping replaces the nearest Steiner vertex") {
  std::size_t snaps = 0;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    Config config;
    config.tau = 4.1;
    RunOptions options;
    std::vector<std::string> trail;
    std::size_t pending = kNoIndex;
    options.observer = [&](const MeshStore& store, const RunEvent& e) {
      if (e.kind == RunEvent::Kind::walk) {
        const VertexRecord& q = store.vertex(e.walk.vertex);
        pending = q.kind == VertexKind::steiner ? q.id : kNoIndex;
        if (pending != kNoIndex) {
          for (std::size_t v : store.alive_in_layer(q.layer))
            CHECK(distance(e.query, q.point) <= distance(e.query, store.vertex(v).point));
        }
        trail.clear();
        return;
      }
      trail.push_back(e.operation);
      if (pending != kNoIndex && trail.size() == 1) {
        CHECK(e.operation == "delete");
        CHECK_FALSE(store.vertex(pending).alive);
      }
      if (pending != kNoIndex && trail.size() == 2) {
        CHECK(e.operation == "snap");
        ++snaps;
      }
    };
    const auto input = test::uniform_points(150, 2, seed);
    const RunResult run = well_spaced_points(input, config, options);
    check_inputs_survive(run, input);
    check_no_cage_deleted(*run.store);
    CHECK(run.stats.snap_count > 0);
  }
  CHECK(snaps > 0);
}

TEST_CASE("walks ending at cage vertices insert regularly") {
  std::size_t cage_hits = 0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    bool expect_insert = false;
    RunOptions options;
    options.observer = [&](const MeshStore& store, const RunEvent& e) {
      if (e.kind == RunEvent::Kind::walk) {
        expect_insert = store.vertex(e.walk.vertex).kind == VertexKind::cage;
        cage_hits += expect_insert;
        return;
      }
      if (expect_insert) CHECK(e.operation == "insert");
      expect_insert = false;
    };
    // A far outlier leaves the rest of the input near the root cage's side.
    auto input = test::uniform_points(30, 2, seed);
    input.push_back(pt({-3, 0.5}));
    const RunResult run = well_spaced_points(input, Config{}, options);
    check_no_cage_deleted(*run.store);
  }
  MESSAGE("walks that ended at a cage vertex: " << cage_hits);
}

TEST_CASE("Steiner points shrink the cell they fix") {
  Config config;
  RunOptions options;
  std::optional<MeshStore> before;
  std::size_t checked = 0;
  options.observer = [&](const MeshStore& store, const RunEvent& e) {
    if (e.kind == RunEvent::Kind::walk) return;
    if (e.operation == "steiner" && before) {
      const std::size_t s = store.vertex_count() - 1;
      const Point& x = store.vertex(s).point;
      for (std::size_t v = 0; v < before->vertex_count(); ++v) {
        const VertexRecord& old = before->vertex(v);
        if (!old.alive || old.kind == VertexKind::cage || old.farthest_corner != x) continue;
        CHECK(old.aspect() > config.tau_threshold());
        // Exact aspect of v, before and after, clipped the same way.
        auto exact = [&](const MeshStore& m) {
          const auto ids = m.alive_in_layer(old.layer);
          std::vector<Point> pts;
          std::size_t me = 0;
          for (std::size_t i = 0; i < ids.size(); ++i) {
            if (ids[i] == v) me = i;
            pts.push_back(m.vertex(ids[i]).point);
          }
          return oracle::exact_aspect(me, pts, quality_clip(m, v));
        };
        CHECK(exact(store) < exact(*before));
        ++checked;
        break;
      }
    }
    before = store;
  };
  well_spaced_points(test::uniform_points(15, 2, 5), config, options);
  CHECK(checked > 0);
}

TEST_CASE("exact aspect ratios stay under tau_prune after every mutation") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    RunOptions options;
    double worst = 0.0;
    options.observer = [&](const MeshStore& store, const RunEvent& e) {
      if (e.kind == RunEvent::Kind::walk) return;
      for (std::size_t l = 0; l < store.layer_count(); ++l) {
        const auto ids = store.alive_in_layer(l);
        std::vector<Point> pts;
        for (std::size_t id : ids) pts.push_back(store.vertex(id).point);
        for (std::size_t i = 0; i < ids.size(); ++i) {
          if (store.vertex(ids[i]).kind == VertexKind::cage) continue;
          try {
            worst = std::max(worst, oracle::exact_aspect(i, pts, quality_clip(store, ids[i])));
          } catch (const UsageError&) {
            // unbounded cell outside the domain
          }
        }
      }
    };
    well_spaced_points(test::uniform_points(12, 2, seed), Config{}, options);
    CHECK(worst <= Config{}.tau_prune);
  }
}

TEST_CASE("runs terminate and keep their invariants") {
  std::mt19937_64 rng(77);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int d = 1 + static_cast<int>(seed % 3);
    const std::size_t n = d == 3 ? 4 + seed % 9 : 5 + (seed * 7) % 60;
    auto input = test::uniform_points(n, d, seed);
    // Some instances get a tight pair to force layering.
    if (seed % 4 == 0) {
      Point near = input[0];
      near[0] += 1e-5;
      input.push_back(near);
    }
    Config config;
    config.seed = seed;
    const RunResult run = well_spaced_points(input, config);
    check_inputs_survive(run, input);
    check_no_cage_deleted(*run.store);
    CHECK(run.stats.max_degree <= std::pow(3.0 * 64.0 * 64.0, d));
    for (std::size_t v = 0; v < run.store->vertex_count(); ++v) {
      const VertexRecord& rec = run.store->vertex(v);
      if (!rec.alive) continue;
      if (rec.kind != VertexKind::cage) CHECK(rec.aspect() <= config.tau_threshold());
      for (std::size_t u : rec.neighbors) CHECK(run.store->has_edge(u, v));
    }
  }
}

TEST_CASE("identical inputs give identical graphs") {
  const auto input = test::uniform_points(40, 2, 13);
  const RunResult a = well_spaced_points(input, Config{});
  const RunResult b = well_spaced_points(input, Config{});
  CHECK(a.graph == b.graph);
}

TEST_CASE("input and cap errors") {
  CHECK_THROWS_AS(well_spaced_points(std::vector<Point>{pt({0, 0})}, Config{}), UsageError);
  CHECK_THROWS_AS(well_spaced_points(std::vector<Point>{pt({0, 0}), pt({0, 0})}, Config{}),
                  UsageError);
  CHECK_THROWS_AS(well_spaced_points(std::vector<Point>{pt({0, 0}), pt({0, 0, 1})}, Config{}),
                  UsageError);
  CHECK_THROWS_AS(
      well_spaced_points(std::vector<Point>{pt({0, 0}), pt({std::nan(""), 0})}, Config{}),
      UsageError);
  Config bad;
  bad.tau = 4.0;
  CHECK_THROWS_AS(well_spaced_points(test::uniform_points(5, 2, 0), bad), ConfigError);
  Config capped;
  capped.max_insertions = 5;
  CHECK_THROWS_AS(well_spaced_points(test::uniform_points(20, 2, 0), capped), ResourceError);
}

TEST_CASE("stats") {
  const auto input = test::uniform_points(25, 2, 2);
  const RunResult run = well_spaced_points(input, Config{});
  const RunStats& s = run.stats;
  CHECK(s.n_input == 25);
  CHECK(s.m_output == 25 + s.steiner_count);
  CHECK(s.layer_count == 1);
  CHECK(s.max_degree == run.store->max_degree());
  std::size_t binned = 0;
  for (const HistogramBin& bin : s.aspect_histogram) binned += bin.count;
  CHECK(binned == s.m_output);
  CHECK(std::isinf(s.aspect_histogram.back().hi));
  CHECK(s.wall_time_ms > 0.0);
}
