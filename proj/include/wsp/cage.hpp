#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "wsp/geometry.hpp"

namespace wsp {

/// A finite eta-cover of the unit sphere S^{d-1}: every unit vector lies within
/// distance eta of some direction. Immutable once built.
struct Cage {
  int dimension = 0;
  double eta = 0.0;
  std::vector<Point> directions;

  std::size_t size() const { return directions.size(); }
};

struct CageOptions {
  std::uint64_t seed = 0;
  /// Refuse to build cages whose predicted size ceil((4/eta)^d) exceeds this.
  double size_cap = 1e6;
  /// Upper bound on the number of sphere samples the net is drawn from.
  std::size_t sample_cap = 1'000'000;
};

/// Greedy farthest-point net over a dense pseudo-random sample of the sphere,
/// then coverage-verified on an independent sample. Cached per (d, eta, seed).
std::shared_ptr<const Cage> build_cage(int d, double eta, const CageOptions& options = {});

/// center + radius * c for every direction c.
std::vector<Point> place_cage(const Cage& cage, const Point& center, double radius);

/// Largest distance from a sampled unit vector to its nearest direction.
double sampled_coverage(const Cage& cage, std::size_t samples, std::uint64_t seed);

/// Upper bound ceil((4/eta)^d) on the cage size.
double cage_size_bound(int d, double eta);

/// JSON list of direction vectors.
std::string cage_to_json(const Cage& cage);
/// Inverse of cage_to_json; also accepts {"dimension", "eta", "directions"}.
Cage cage_from_json(const std::string& text, double eta = 0.0);

}  // namespace wsp
