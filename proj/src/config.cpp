#include "wsp/config.hpp"

#include <cmath>
#include <string>

#include "wsp/error.hpp"

namespace wsp {

void Config::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("invalid config: " + what); };
  if (!std::isfinite(tau) || !(tau > 4.0)) fail("tau must exceed 4 (K = 4 tau / (tau - 4))");
  if (!(epsilon > 0.0 && epsilon < 1.0)) fail("epsilon must lie in (0, 1)");
  if (!(eta > 0.0 && eta <= 1.0)) fail("eta must lie in (0, 1]");
  if (!std::isfinite(tau_prune) || !(tau_prune > tau_threshold())) {
    fail("tau_prune must exceed the refinement threshold tau (1 - epsilon)(1 - eta^2 / 2)");
  }
  if (!std::isfinite(root_cage_scale) || !(root_cage_scale >= 2.0)) {
    fail("root_cage_scale must be at least 2");
  }
  if (max_insertions == 0) fail("max_insertions must be positive");
  if (max_walk_steps == 0) fail("max_walk_steps must be positive");
}

}  // namespace wsp
