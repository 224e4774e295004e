#pragma once

#include <string>
#include <vector>

namespace decaylab {

/// Closed-form reference solutions for the 1D equation
/// u_t + (max(0,-u))_x = 0 with square-wave data, plain and perturbed.

struct Example1Params {
  double epsilon = 0.0;  // perturbation height, 0 <= epsilon < 1
};

double example1_flux(double u);

/// 2-periodic square wave: +1 on [0,1), -1 on [1,2).
double example1_initial(double x);

/// Entropy solution with the square-wave data; 2-periodic in x, identically
/// zero for t > 2.
double example1_periodic(double t, double x);

/// Entropy solution with data p + epsilon * chi_[0,1); differs from the
/// periodic solution only on [0, 2). For t >= 2 it equals
/// (1+eps) * chi_[0, eps/(1+eps)).
double example1_perturbed(double t, double x, const Example1Params& p);

/// Two-column (x, u) plot data at a fixed time.
std::string example1_plot_csv(double t, double epsilon, int samples = 800);

}  // namespace decaylab
