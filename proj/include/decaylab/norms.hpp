#pragma once

#include "decaylab/grid.hpp"
#include "decaylab/lattice.hpp"
#include "decaylab/solver.hpp"

#include <string>
#include <vector>

namespace decaylab {

/// Quadrature weights of one window placement, relative to a window centered
/// at a cell center. Weight = volume of (cell intersect window); exact in 1D,
/// polygon-clipped in 2D, subcell-sampled on 3D ball boundaries.
struct WindowStencil {
  std::vector<std::array<int, 3>> offsets;
  std::vector<double> weights;
  double weight_sum = 0;
  double surface = 0;  // boundary measure, used for the center-defect bound

  static WindowStencil build(const Window& w, const GridField& grid);
};

struct NormResult {
  double value = 0;
  /// Bound on the defect of restricting the sup over window centers to the
  /// grid: surface(V) * sup|u - m| * dx * sqrt(d) / 2.
  double center_defect_bound = 0;
};

/// sup over grid-centered windows y of the quadrature of |u - m_shift| over
/// y + V. Requires max spacing <= inradius(V)/4.
NormResult v_norm(const GridField& u, const Window& v, double m_shift);

/// v_norm with the unit ball (bit-identical to calling v_norm directly).
NormResult x_norm(const GridField& u, double m_shift);

/// Covering count m with v_norm(u, V1) <= m * v_norm(u, V2).
int norm_equivalence_bound(const Window& v1, const Window& v2);

/// Normalized L1 distance of a grid-periodic field to a constant over one
/// fundamental cell. Validates periodicity on the grid.
double torus_l1_distance(const GridField& u, double c, const PeriodStructure& s, double tol = 1e-8);

struct DecayReport {
  std::vector<double> times;
  std::vector<double> x_norm;
  std::vector<double> torus_l1;  // empty when no period structure is given
  std::vector<double> mass;
  std::vector<double> min_value;
  std::vector<double> max_value;
  double decay_threshold = 0;
  std::string verdict;  // decayed | stalled | transient

  std::string to_csv() const;  // t,x_norm,torus_l1,mass,min,max
};

DecayReport decay_report(const Trajectory& traj, double m, const PeriodStructure* s, double decay_threshold);

/// Mean over all axes transverse to `axis`, one value per slice.
std::vector<double> slice_means(const GridField& u, int axis);

}  // namespace decaylab
