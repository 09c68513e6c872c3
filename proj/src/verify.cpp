#include "wsp/verify.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

#include "wsp/error.hpp"
#include "wsp/oracle.hpp"

namespace wsp {

namespace {

std::string describe(std::size_t vertex, double value, double limit) {
  std::ostringstream out;
  out << "vertex " << vertex << ": " << value << " > " << limit;
  return out.str();
}

nlohmann::json summary_json(const CheckSummary& s) {
  return {{"passed", s.passed()}, {"checked", s.checked},  {"failures", s.failures},
          {"skipped", s.skipped}, {"worst", s.worst},      {"limit", s.limit},
          {"first_failure", s.first_failure}};
}

}  // namespace

HalfspaceSet quality_clip(const MeshStore& store, std::size_t vertex) {
  const VertexRecord& v = store.vertex(vertex);
  const Layer& layer = store.layer(v.layer);
  const double tol = kRelTol * std::max(magnitude_scale(v.point), layer.cage_radius);
  if (layer.domain.contains(v.point, tol)) return layer.domain;
  return {};
}

CheckSummary check_delaunay(const MeshStore& store) {
  CheckSummary out;
  oracle::DelaunayAuditor auditor;
  const auto violations = auditor.audit(store);
  for (std::size_t v = 0; v < store.vertex_count(); ++v) {
    const VertexRecord& rec = store.vertex(v);
    if (rec.alive && rec.kind != VertexKind::cage) ++out.checked;
  }
  out.failures = violations.size();
  if (!violations.empty()) {
    out.first_failure = "vertex " + std::to_string(violations.front().vertex) +
                        " misses a neighbor; site " +
                        std::to_string(violations.front().closer_site) +
                        " is closer to one of its graph-cell corners";
  }
  return out;
}

CheckSummary check_quality(const MeshStore& store) {
  CheckSummary out;
  out.limit = store.config().tau / store.config().approximation_factor();
  for (std::size_t layer = 0; layer < store.layer_count(); ++layer) {
    const std::vector<std::size_t> ids = store.alive_in_layer(layer);
    std::vector<Point> sites;
    for (std::size_t id : ids) sites.push_back(store.vertex(id).point);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (store.vertex(ids[i]).kind == VertexKind::cage) continue;
      double aspect = 0.0;
      try {
        aspect = oracle::exact_aspect(i, sites, quality_clip(store, ids[i]));
      } catch (const UsageError&) {
        ++out.skipped;  // unbounded cell of a site outside the cage hull
        continue;
      }
      ++out.checked;
      out.worst = std::max(out.worst, aspect);
      if (aspect > out.limit) {
        if (out.failures++ == 0) out.first_failure = describe(ids[i], aspect, out.limit);
      }
    }
  }
  return out;
}

CheckSummary check_feature_size(const MeshStore& store) {
  CheckSummary out;
  const double t = store.config().tau_threshold();
  const double k_prime = 4.0 * t / (t - 4.0);
  out.limit = 1.05 * k_prime;
  for (std::size_t layer = 0; layer < store.layer_count(); ++layer) {
    const std::vector<std::size_t> ids = store.alive_in_layer(layer);
    std::vector<Point> mesh;
    std::vector<Point> given;
    for (std::size_t id : ids) {
      const VertexRecord& v = store.vertex(id);
      mesh.push_back(v.point);
      if (v.kind != VertexKind::steiner) given.push_back(v.point);
    }
    if (given.size() < 2) continue;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const double f_given = oracle::feature_size(mesh[i], given);
      const double f_mesh = oracle::feature_size(mesh[i], mesh);
      const double ratio = f_given / f_mesh;
      ++out.checked;
      out.worst = std::max(out.worst, ratio);
      if (ratio > out.limit) {
        if (out.failures++ == 0) out.first_failure = describe(ids[i], ratio, out.limit);
      }
    }
  }
  return out;
}

VerifyReport verify(const MeshStore& store) {
  return {check_delaunay(store), check_quality(store), check_feature_size(store)};
}

std::string verify_report_to_json(const VerifyReport& report) {
  nlohmann::json j;
  j["passed"] = report.passed();
  j["delaunay"] = summary_json(report.delaunay);
  j["quality"] = summary_json(report.quality);
  j["feature_size"] = summary_json(report.feature_size);
  return j.dump(2);
}

}  // namespace wsp
