#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace decaylab {

/// Spatial point in R^n, n <= 3. Unused coordinates stay 0.
using Point = std::array<double, 3>;

/// Scalar field sampler on R^n.
using Sampler = std::function<double(const Point&)>;

inline Point make_point(double x, double y = 0.0, double z = 0.0) { return {x, y, z}; }

/// Bounded open window (ball or axis-aligned box), used both by the covering
/// machinery and by the sliding-window norms.
struct Window {
  enum class Shape { Ball, Box };

  Shape shape = Shape::Ball;
  int dim = 1;
  double radius = 1.0;                       // balls
  std::array<double, 3> half = {1, 1, 1};    // boxes
  std::array<double, 3> center = {0, 0, 0};

  static Window ball(int dim, double radius, Point center = {0, 0, 0}) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("window dim must be 1..3");
    if (radius <= 0) throw std::invalid_argument("window radius must be positive");
    Window w;
    w.shape = Shape::Ball;
    w.dim = dim;
    w.radius = radius;
    w.center = center;
    return w;
  }

  static Window box(int dim, std::array<double, 3> half, Point center = {0, 0, 0}) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("window dim must be 1..3");
    for (int i = 0; i < dim; ++i)
      if (half[i] <= 0) throw std::invalid_argument("window half-width must be positive");
    Window w;
    w.shape = Shape::Box;
    w.dim = dim;
    w.half = half;
    w.center = center;
    return w;
  }

  /// Strict membership of an absolute point.
  bool contains(const Point& x) const {
    if (shape == Shape::Ball) {
      double s = 0;
      for (int i = 0; i < dim; ++i) {
        double d = x[i] - center[i];
        s += d * d;
      }
      return s < radius * radius;
    }
    for (int i = 0; i < dim; ++i) {
      if (std::abs(x[i] - center[i]) >= half[i]) return false;
    }
    return true;
  }

  double inradius() const {
    if (shape == Shape::Ball) return radius;
    double r = half[0];
    for (int i = 1; i < dim; ++i) r = std::min(r, half[i]);
    return r;
  }

  /// Axis-aligned bounding interval [lo, hi] on a given axis.
  std::array<double, 2> bound(int axis) const {
    double r = shape == Shape::Ball ? radius : half[axis];
    return {center[axis] - r, center[axis] + r};
  }
};

}  // namespace decaylab
