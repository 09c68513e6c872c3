#pragma once

#include <cstddef>
#include <cstdint>

namespace wsp {

/// Run parameters. The derived constants follow from tau alone (K, K_S, K_P,
/// tau') or from (tau, epsilon, eta) for the refinement threshold.
struct Config {
  double tau = 8.0;               // refinement quality threshold, > 4
  double epsilon = 0.1;           // LP tolerance, in (0, 1)
  double eta = 0.5;               // cage parameter, in (0, 1]
  double tau_prune = 64.0;        // operational aspect cap for search, prune and LP range
  double root_cage_scale = 3.0;   // root cage radius = scale * d(p1, p2), >= 2
  std::uint64_t seed = 0;         // cage sampling seed
  std::size_t max_insertions = 1'000'000;
  std::size_t max_walk_steps = 100'000;
  double cage_size_cap = 1e6;

  double K() const { return 4.0 * tau / (tau - 4.0); }
  double K_S() const { return (tau + 4.0) / (tau - 4.0); }
  double K_P() const { return (3.0 * tau + 4.0) / (tau - 4.0); }
  double tau_prime() const { return 2.0 * K() * tau; }
  /// Factor by which a measured outradius may underestimate the true one.
  double approximation_factor() const { return (1.0 - epsilon) * (1.0 - 0.5 * eta * eta); }
  double tau_threshold() const { return tau * approximation_factor(); }

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;
};

}  // namespace wsp
