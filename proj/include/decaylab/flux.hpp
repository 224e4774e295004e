#pragma once

#include "decaylab/lattice.hpp"
#include "decaylab/poly.hpp"

#include <span>
#include <string>
#include <vector>

namespace decaylab {

/// Flux vector phi: piecewise-polynomial components on a bounded state
/// interval, with cached Lipschitz constants.
struct FluxModel {
  double u_min = -1;
  double u_max = 1;
  std::vector<PiecewisePoly> comp;
  std::vector<double> lip;               // derived on [u_min, u_max]
  std::vector<CompiledPiecewise> fast;   // derived double evaluators

  FluxModel() = default;
  FluxModel(double umin, double umax, std::vector<PiecewisePoly> components);

  int dim() const { return static_cast<int>(comp.size()); }
  double eval(int i, double u) const { return fast[static_cast<std::size_t>(i)].eval(u); }
};

/// Named presets used by the experiment configs.
///   burgers:  phi = (u^2/2)      on [-2, 2]
///   example1: phi = (max(0,-u))  on [-2, 2]
///   cubic2d:  phi = (u^2/2, u^3/3) on [-2, 2]
FluxModel flux_preset(const std::string& name);

/// phi_2 affine (constant) exactly on [m-delta, m+delta], quadratic outside;
/// phi_1 = u^2/2. State interval [m-2, m+2].
FluxModel flat_band_flux_2d(const Rat& m, const Rat& delta);

/// u -> xi . phi(u) with merged breakpoints, exact for double weights.
PiecewisePoly directional_component(const FluxModel& phi, std::span<const double> xi);
PiecewisePoly directional_component(const FluxModel& phi, const RatVec& xi);

/// Affineness of a piecewise polynomial on [a, b]. Exact test (all pieces
/// degree <= 1 with equal slope); the relative tolerance only enters for the
/// sampled fallback of callable data.
bool is_affine_on(const PiecewisePoly& f, double a, double b, double tau);
bool is_affine_on(const std::function<double(double)>& f, double a, double b, double tau, int samples = 257);

/// Closed set of states where no nonzero dual-lattice direction sees an
/// affine flux on the resolution vicinity. Reported as merged intervals on
/// the scan grid.
struct NonlinearitySet {
  std::vector<std::pair<double, double>> intervals;  // closed, disjoint, sorted
  double resolution = 0;
  double tolerance = 0;
  bool exact = true;  // rational nullspace path (vs floating rank fallback)

  bool contains(double u) const;
  bool intersects_open(double a, double b) const;
};

NonlinearitySet nonlinearity_set(const FluxModel& phi, const PeriodStructure& s, double delta_grid, double tau);

struct GnCheck {
  bool theorem1_ok = false;  // both semivicinities of m meet F for every eps
  bool gn_ok = false;        // m itself belongs to F
};

GnCheck check_genuine_nonlinearity(const NonlinearitySet& f, double m, std::span<const double> eps_list);

/// Per-component sup |phi_i'| over [a, b]; exact for degree <= 3.
std::vector<double> lipschitz_bound(const FluxModel& phi, double a, double b);

}  // namespace decaylab
