#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "wsp/geometry.hpp"

namespace wsp::test {

inline Point pt(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

// n points uniform in the unit cube [0,1]^d.
inline std::vector<Point> uniform_points(std::size_t n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) {
    Point p(d);
    for (int k = 0; k < d; ++k) p[k] = u(rng);
    out.push_back(p);
  }
  return out;
}

inline Point random_unit(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Point c(d);
  do {
    for (int k = 0; k < d; ++k) c[k] = g(rng);
  } while (c.norm() < 1e-6);
  return c.normalized();
}

}  // namespace wsp::test
