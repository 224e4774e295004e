#pragma once

#include "decaylab/grid.hpp"
#include "decaylab/lattice.hpp"
#include "decaylab/solver.hpp"

#include <span>
#include <vector>

namespace decaylab {

/// Initial data u0 = p + v: periodic part with its period structure plus a
/// perturbation vanishing at infinity.
struct InitialData {
  Sampler periodic_part;
  PeriodStructure period;
  Sampler perturbation;        // zero sampler when absent
  double support_radius = 0;   // 0 means no perturbation
  double mean = 0;             // torus mean of p
  double mean_richardson = 0;
  double lo = 0, hi = 0;       // bounds enclosing p + v

  Sampler u0() const;
};

InitialData make_initial_data(Sampler p, PeriodStructure s, Sampler v, double support_radius,
                              double lo, double hi, int mean_resolution = 256);

/// Measures of the superlevel sets {|v| > lambda} on nested probe boxes;
/// passes when the measure stabilizes on the largest probes.
struct VanishingReport {
  struct Row {
    double lambda = 0;
    std::vector<double> probe_sizes;  // box half-widths
    std::vector<double> measures;
    bool pass = true;
  };
  std::vector<Row> rows;
  bool pass = true;
};

VanishingReport verify_vanishing(const Sampler& v, std::span<const double> lambdas, double probe_radius,
                                 int dim, int resolution = 512);

/// Periodic envelopes of Proposition-1 type over the lattice r*L: cellwise
/// sup/inf of the perturbation over lattice translates, restricted to the
/// fundamental cell of r*L.
struct EnvelopeSet {
  int r = 1;
  GridField v_plus, v_minus, v_abs;
  double eps_plus = 0, eps_minus = 0;  // cell means of v_plus / v_minus
  double m_r = 0;                      // cell mean of v_abs
};

EnvelopeSet periodic_envelopes(const GridField& v, const PeriodStructure& s, int r, double support_radius = -1);

struct BracketingData {
  GridField u0_minus, u0, u0_plus;
  double mean_minus = 0, mean_plus = 0;
  double grid_mean_p = 0;
};

/// u0^+ = p + v_r^+ + (a+ - m - eps+), u0^- = p + v_r^- - (m - a- + eps-),
/// with m the grid mean of p on the envelope grid so the target means are
/// exact. Requires |eps+| < a+ - m and |eps-| < m - a-.
BracketingData build_bracketing_data(const Sampler& p, const GridField& v, const EnvelopeSet& env,
                                     double alpha_minus, double alpha_plus);

/// Periodic initial data m + v(pr(x)) + (delta/2) sin(2 pi xi.x / r) whose
/// slice means along xi stay non-constant; r must equal the range index of
/// xi on the lattice.
InitialData nondecaying_example(double delta, const PeriodStructure& s, const RatVec& xi, int r,
                                const Sampler& v_profile, double m);

/// Drops declared constancy directions: projects the flux onto the
/// complement and restricts the data. Identity when there is nothing to
/// reduce.
ProblemSpec reduce_problem(const ProblemSpec& spec, double constancy_tol = 1e-9);

}  // namespace decaylab
