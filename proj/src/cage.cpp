#include "wsp/cage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <tuple>

#include "json.hpp"

#include "wsp/error.hpp"

namespace wsp {

namespace {

constexpr double kStopFraction = 0.9;
// Coverage is only sampled, so the accepted net must clear eta by a margin.
constexpr double kVerifyFraction = 0.95;
constexpr double kRetryShrink = 0.97;
constexpr int kMaxAttempts = 20;

std::vector<Point> sample_sphere(int d, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Point> out;
  out.reserve(count);
  while (out.size() < count) {
    Point x(d);
    for (int k = 0; k < d; ++k) x[k] = gauss(rng);
    const double n = x.norm();
    if (n < 1e-12) continue;
    out.push_back(x / n);
  }
  return out;
}

// Greedy farthest-point net: stops once every sample is within `target`.
std::vector<Point> farthest_point_net(const std::vector<Point>& samples, double target) {
  std::vector<double> gap(samples.size(), std::numeric_limits<double>::infinity());
  std::vector<Point> net;
  std::size_t next = 0;
  while (true) {
    net.push_back(samples[next]);
    const Point& added = net.back();
    double worst = -1.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      gap[i] = std::min(gap[i], (samples[i] - added).norm());
      if (gap[i] > worst) {
        worst = gap[i];
        next = i;
      }
    }
    if (worst <= target) break;
  }
  return net;
}

std::uint64_t mix(std::uint64_t seed, int d, double eta) {
  std::uint64_t h = seed * 0x9E3779B97F4A7C15ull;
  h ^= static_cast<std::uint64_t>(d) + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
  h ^= static_cast<std::uint64_t>(std::llround(eta * 1e9)) + (h << 6) + (h >> 2);
  return h;
}

Cage construct(int d, double eta, const CageOptions& options) {
  Cage cage{d, eta, {}};
  if (d == 1) {
    cage.directions = {Point::Constant(1, 1.0), Point::Constant(1, -1.0)};
    return cage;
  }

  const double predicted = std::pow(4.0 / eta, d);
  const auto sample_count = static_cast<std::size_t>(std::min<double>(
      static_cast<double>(options.sample_cap), std::max(1e4, 100.0 * predicted)));
  const std::uint64_t base = mix(options.seed, d, eta);
  const auto samples = sample_sphere(d, sample_count, base);
  const std::size_t check_count = 10'000 * static_cast<std::size_t>(d);

  double target = eta * kStopFraction;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    cage.directions = farthest_point_net(samples, target);
    if (sampled_coverage(cage, check_count, base + 1 + attempt) <= eta * kVerifyFraction) return cage;
    target *= kRetryShrink;
  }
  throw InternalError("cage construction failed coverage verification for d=" +
                      std::to_string(d));
}

}  // namespace

double cage_size_bound(int d, double eta) { return std::ceil(std::pow(4.0 / eta, d)); }

double sampled_coverage(const Cage& cage, std::size_t samples, std::uint64_t seed) {
  double worst = 0.0;
  for (const Point& x : sample_sphere(cage.dimension, samples, seed)) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& c : cage.directions) best = std::min(best, (x - c).squaredNorm());
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

std::shared_ptr<const Cage> build_cage(int d, double eta, const CageOptions& options) {
  if (d < 1) throw UsageError("build_cage: dimension must be >= 1");
  if (!(eta > 0.0 && eta <= 1.0)) throw UsageError("build_cage: eta must lie in (0, 1]");
  if (cage_size_bound(d, eta) > options.size_cap) {
    throw ResourceError("build_cage: predicted cage size " +
                        std::to_string(cage_size_bound(d, eta)) + " exceeds cap");
  }

  using Key = std::tuple<int, double, std::uint64_t, std::size_t>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const Cage>> cache;

  const Key key{d, eta, options.seed, options.sample_cap};
  std::lock_guard lock(mutex);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto cage = std::make_shared<const Cage>(construct(d, eta, options));
  cache.emplace(key, cage);
  return cage;
}

std::vector<Point> place_cage(const Cage& cage, const Point& center, double radius) {
  if (!(radius > 0.0)) throw UsageError("place_cage: radius must be positive");
  if (center.size() != cage.dimension) throw UsageError("place_cage: dimension mismatch");
  std::vector<Point> out;
  out.reserve(cage.size());
  for (const Point& c : cage.directions) out.push_back(center + radius * c);
  return out;
}

std::string cage_to_json(const Cage& cage) {
  auto dirs = nlohmann::json::array();
  for (const Point& c : cage.directions) {
    dirs.push_back(std::vector<double>(c.data(), c.data() + c.size()));
  }
  return dirs.dump();
}

Cage cage_from_json(const std::string& text, double eta) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("cage_from_json: ") + e.what());
  }
  Cage cage;
  // Accept both the object form and a bare list of direction vectors.
  const nlohmann::json& dirs = j.is_array() ? j : j.at("directions");
  for (const auto& row : dirs) {
    const auto v = row.get<std::vector<double>>();
    cage.directions.push_back(Eigen::Map<const Point>(v.data(), static_cast<Eigen::Index>(v.size())));
  }
  if (cage.directions.empty()) throw UsageError("cage_from_json: no directions");
  cage.dimension = j.is_object() && j.contains("dimension")
                       ? j["dimension"].get<int>()
                       : static_cast<int>(cage.directions.front().size());
  cage.eta = j.is_object() && j.contains("eta") ? j["eta"].get<double>() : eta;
  for (const Point& c : cage.directions) {
    if (c.size() != cage.dimension) throw UsageError("cage_from_json: ragged directions");
    if (std::abs(c.norm() - 1.0) > 1e-9) throw UsageError("cage_from_json: non-unit direction");
  }
  return cage;
}

}  // namespace wsp
