#pragma once

#include <cmath>
#include <vector>

namespace wsp {

inline double ellipsoid_dot(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) s += a[k] * b[k];
  return s;
}

/// Central-cut ellipsoid {y : (y - center)^T P^-1 (y - center) <= 1}.
class Ellipsoid {
 public:
  // Ball of the given radius around the origin.
  Ellipsoid(int d, double radius) : d_(d), center_(d, 0.0), shape_(d * d, 0.0), pa_(d) {
    for (int k = 0; k < d; ++k) shape_[k * d + k] = radius * radius;
    floor_ = 1e-24 * radius * radius;
  }

  const std::vector<double>& center() const { return center_; }
  /// P, row-major d x d.
  const std::vector<double>& shape() const { return shape_; }

  enum class Cut { ok, empty, degenerate };

  // Keep the half {a^T y <= a^T center}; `offset` is the violated bound b,
  // used to certify emptiness when the whole ellipsoid lies beyond it.
  Cut cut(const double* a, double offset) {
    const int d = d_;
    for (int i = 0; i < d; ++i) pa_[i] = ellipsoid_dot(&shape_[i * d], a, d);
    const double apa = ellipsoid_dot(a, pa_.data(), d);
    if (!(apa > floor_)) return Cut::degenerate;
    const double root = std::sqrt(apa);
    if (ellipsoid_dot(a, center_.data(), d) - root > offset) return Cut::empty;
    for (int i = 0; i < d; ++i) pa_[i] /= root;
    if (d == 1) {
      center_[0] -= pa_[0] / 2.0;
      shape_[0] /= 4.0;
      return Cut::ok;
    }
    const double dd = static_cast<double>(d);
    for (int i = 0; i < d; ++i) center_[i] -= pa_[i] / (dd + 1.0);
    const double scale = dd * dd / (dd * dd - 1.0);
    const double beta = 2.0 / (dd + 1.0);
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) {
        const double v = scale * (0.5 * (shape_[i * d + j] + shape_[j * d + i]) - beta * pa_[i] * pa_[j]);
        shape_[i * d + j] = v;
        shape_[j * d + i] = v;
      }
    }
    return Cut::ok;
  }

 private:
  int d_;
  std::vector<double> center_;
  std::vector<double> shape_;
  std::vector<double> pa_;
  double floor_;
};

}  // namespace wsp
