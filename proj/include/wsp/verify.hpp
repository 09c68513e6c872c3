#pragma once

#include <cstddef>
#include <string>

#include "wsp/adg.hpp"

namespace wsp {

struct CheckSummary {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;
  double worst = 0.0;  // largest observed value of the checked quantity
  double limit = 0.0;
  std::string first_failure;

  bool passed() const { return failures == 0; }
};

struct VerifyReport {
  CheckSummary delaunay;      // missing Delaunay edges, per vertex
  CheckSummary quality;       // exact aspect of every non-cage cell
  CheckSummary feature_size;  // f_P(v) / f_M(v) per vertex

  bool passed() const { return delaunay.passed() && quality.passed() && feature_size.passed(); }
};

/// The region a vertex's quality is judged in: its layer's domain when the
/// vertex lies inside it, otherwise no clipping at all.
HalfspaceSet quality_clip(const MeshStore& store, std::size_t vertex);

CheckSummary check_delaunay(const MeshStore& store);
/// Exact aspect <= tau / ((1 - epsilon)(1 - eta^2 / 2)).
CheckSummary check_quality(const MeshStore& store);
/// f_P(v) <= 1.05 K' f_M(v) per layer, with K' = 4 t / (t - 4) for the
/// refinement threshold t, P the layer's input copies and cage points.
CheckSummary check_feature_size(const MeshStore& store);

VerifyReport verify(const MeshStore& store);

std::string verify_report_to_json(const VerifyReport& report);

}  // namespace wsp
