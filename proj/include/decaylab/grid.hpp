#pragma once

#include "decaylab/geometry.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace decaylab {

/// Cell-averaged scalar field on a uniform rectangular grid with periodic
/// topology on every axis. Unused axes have one cell.
struct GridField {
  int dim = 1;
  std::array<int, 3> cells = {1, 1, 1};
  std::array<double, 3> dx = {1, 1, 1};
  std::array<double, 3> origin = {0, 0, 0};
  std::vector<double> data;

  GridField() = default;
  GridField(int dim, std::array<int, 3> cells, std::array<double, 3> dx, std::array<double, 3> origin);

  static GridField sample(int dim, std::array<int, 3> cells, std::array<double, 3> dx,
                          std::array<double, 3> origin, const Sampler& f);

  std::size_t size() const { return data.size(); }
  std::size_t index(int i, int j = 0, int k = 0) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(cells[0]) *
               (static_cast<std::size_t>(j) + static_cast<std::size_t>(cells[1]) * static_cast<std::size_t>(k));
  }
  double& at(int i, int j = 0, int k = 0) { return data[index(i, j, k)]; }
  double at(int i, int j = 0, int k = 0) const { return data[index(i, j, k)]; }

  /// Wraps an index onto the periodic axis.
  int wrap(int axis, int i) const {
    int n = cells[axis];
    int r = i % n;
    return r < 0 ? r + n : r;
  }

  double cell_volume() const {
    double v = 1;
    for (int a = 0; a < dim; ++a) v *= dx[a];
    return v;
  }

  double axis_length(int axis) const { return cells[axis] * dx[axis]; }

  Point center(int i, int j = 0, int k = 0) const {
    Point p{0, 0, 0};
    int idx[3] = {i, j, k};
    for (int a = 0; a < dim; ++a) p[a] = origin[a] + (idx[a] + 0.5) * dx[a];
    return p;
  }

  double min_value() const;
  double max_value() const;
  bool finite() const;
};

/// Fixed-shape pairwise (tree) sum; deterministic for a given array length
/// regardless of threading.
double tree_sum(std::span<const double> v);

/// Integral of the field over the torus: tree_sum(data) * cell volume.
double total_mass(const GridField& u);

/// Unnormalized L1 distance over the whole grid.
double l1_distance(const GridField& a, const GridField& b);

/// Mean of |u - c| over all cells times the torus volume.
double l1_to_constant(const GridField& u, double c);

}  // namespace decaylab
