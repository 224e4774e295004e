#pragma once

#include "decaylab/flux.hpp"
#include "decaylab/grid.hpp"

#include <optional>
#include <vector>

namespace decaylab {

enum class SchemeKind { LocalLaxFriedrichs, Godunov1D, EngquistOsher };

SchemeKind scheme_from_name(const std::string& name);

struct SchemeConfig {
  SchemeKind scheme = SchemeKind::LocalLaxFriedrichs;
  double cfl = 0.45;
  double t_end = 1.0;
  std::vector<double> output_times;  // sorted, within [0, t_end]
  double u_lo = -2.0;                // invariant state interval
  double u_hi = 2.0;
  bool record_steps = false;         // keep the state at every accepted step
  std::optional<double> dt_override;

  void validate() const;
};

/// Assembled Cauchy problem on a periodic rectangular domain.
struct ProblemSpec {
  FluxModel flux;
  Sampler u0;
  int dim = 1;
  std::array<int, 3> cells = {1, 1, 1};
  std::array<double, 3> dx = {1, 1, 1};
  std::array<double, 3> origin = {0, 0, 0};
  SchemeConfig scheme;
  std::optional<PeriodStructure> period;
  double mean = 0;
};

/// Monotone numerical flux per axis (shared by the update and the entropy
/// audit). lambda is the Lipschitz bound on the configured state interval.
struct NumericalFlux {
  SchemeKind scheme;
  CompiledPiecewise phi;
  double lambda = 0;
  // monotonicity nodes for godunov / engquist-osher
  std::vector<double> nodes;
  std::vector<double> phi_at;
  std::vector<bool> increasing;
  std::vector<double> pos_cum;  // integral of max(phi',0) from nodes[0]
  std::vector<double> neg_cum;  // integral of min(phi',0)

  static NumericalFlux build(const PiecewisePoly& component, SchemeKind scheme, double u_lo, double u_hi);
  double operator()(double a, double b) const;

 private:
  double pos_part(double u) const;
  double neg_part(double u) const;
  std::pair<double, double> range(double a, double b) const;
};

/// CFL time step: cfl / sum_i (L_i / dx_i). When every L_i vanishes the
/// step clamps to the output cadence.
double cfl_dt(const GridField& grid, std::span<const double> lipschitz, double cfl, double output_cadence);

/// One conservative forward-Euler update; rejects dt that would break
/// monotonicity.
GridField step(const GridField& u, const FluxModel& phi, const SchemeConfig& cfg, double dt);

struct TimeContinuityEntry {
  double t0 = 0, t1 = 0;
  double l1_diff = 0;
  double bound = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<GridField> states;
  // dense recording (record_steps): every accepted step, including t = 0
  std::vector<double> step_times;
  std::vector<GridField> steps;
  std::vector<TimeContinuityEntry> continuity;
  FluxModel flux;
  SchemeConfig cfg;
  double dt_nominal = 0;
  bool aborted = false;

  const GridField& at_time(double t, double tol = 1e-9) const;
};

Trajectory solve(const ProblemSpec& spec);

/// Compactly supported space-time test function (C^1 bump).
struct TestBump {
  double t_center = 0, t_radius = 1;
  Point center = {0, 0, 0};
  std::array<double, 3> radius = {1, 1, 1};

  double operator()(double t, const Point& x, int dim) const;
};

struct EntropyResidual {
  double value = 0;
  double scale = 0;  // sum of absolute quadrature contributions
};

/// Discrete Kruzhkov weak form of the dense trajectory against the scheme's
/// numerical entropy flux; nonnegative up to roundoff for monotone output.
EntropyResidual entropy_residual(const Trajectory& traj, double k, const TestBump& f);

}  // namespace decaylab
