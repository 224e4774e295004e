#include "decaylab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace decaylab {

GridField::GridField(int dim_, std::array<int, 3> cells_, std::array<double, 3> dx_, std::array<double, 3> origin_)
    : dim(dim_), cells(cells_), dx(dx_), origin(origin_) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("grid dim must be 1..3");
  std::size_t total = 1;
  for (int a = 0; a < 3; ++a) {
    if (a < dim) {
      if (cells[a] < 3) throw std::invalid_argument("grid needs at least 3 cells per axis");
      if (!(dx[a] > 0)) throw std::invalid_argument("grid spacing must be positive");
    } else {
      cells[a] = 1;
      dx[a] = 1;
      origin[a] = 0;
    }
    total *= static_cast<std::size_t>(cells[a]);
  }
  data.assign(total, 0.0);
}

GridField GridField::sample(int dim, std::array<int, 3> cells, std::array<double, 3> dx,
                            std::array<double, 3> origin, const Sampler& f) {
  GridField g(dim, cells, dx, origin);
  for (int k = 0; k < g.cells[2]; ++k)
    for (int j = 0; j < g.cells[1]; ++j)
      for (int i = 0; i < g.cells[0]; ++i) g.at(i, j, k) = f(g.center(i, j, k));
  return g;
}

double GridField::min_value() const { return *std::min_element(data.begin(), data.end()); }
double GridField::max_value() const { return *std::max_element(data.begin(), data.end()); }

bool GridField::finite() const {
  for (double v : data)
    if (!std::isfinite(v)) return false;
  return true;
}

double tree_sum(std::span<const double> v) {
  if (v.empty()) return 0.0;
  if (v.size() == 1) return v[0];
  if (v.size() <= 8) {
    double s = 0;
    for (double x : v) s += x;
    return s;
  }
  std::size_t half = v.size() / 2;
  return tree_sum(v.subspan(0, half)) + tree_sum(v.subspan(half));
}

double total_mass(const GridField& u) { return tree_sum(u.data) * u.cell_volume(); }

double l1_distance(const GridField& a, const GridField& b) {
  if (a.data.size() != b.data.size()) throw std::invalid_argument("l1_distance: size mismatch");
  std::vector<double> diff(a.data.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = std::abs(a.data[i] - b.data[i]);
  return tree_sum(diff) * a.cell_volume();
}

double l1_to_constant(const GridField& u, double c) {
  std::vector<double> diff(u.data.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = std::abs(u.data[i] - c);
  return tree_sum(diff) * u.cell_volume();
}

}  // namespace decaylab
