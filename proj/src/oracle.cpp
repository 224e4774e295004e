#include "decaylab/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace decaylab {

double example1_flux(double u) { return std::max(0.0, -u); }

double example1_initial(double x) {
  double r = x - 2.0 * std::floor(x / 2.0);
  return r < 1.0 ? 1.0 : -1.0;
}

double example1_periodic(double t, double x) {
  if (t < 0) throw std::invalid_argument("example1_periodic: t must be nonnegative");
  if (t > 2.0) return 0.0;
  double r = x - 2.0 * std::floor(x / 2.0);
  // branches in print order; empty ranges fall through
  if (r < 1.0 - t / 2.0) return 1.0;
  if (r >= 1.0 - t / 2.0 && r < 2.0 - t) return -1.0;
  if (r >= 2.0 - t) return 0.0;
  return 0.0;
}

double example1_perturbed(double t, double x, const Example1Params& p) {
  if (t < 0) throw std::invalid_argument("example1_perturbed: t must be nonnegative");
  if (p.epsilon < 0.0 || p.epsilon >= 1.0)
    throw std::invalid_argument("example1_perturbed: epsilon must lie in [0, 1)");
  const double eps = p.epsilon;
  if (x < 0.0 || x >= 2.0) return example1_periodic(t, x);
  const double plateau = eps / (1.0 + eps);
  if (t >= 2.0) return x < plateau ? 1.0 + eps : 0.0;
  const double front = 1.0 - t / (2.0 + eps);
  if (x < std::max(front, plateau)) return 1.0 + eps;
  if (x >= front && x < 2.0 - t) return -1.0;
  if (x >= std::max(2.0 - t, plateau)) return 0.0;
  return 0.0;
}

std::string example1_plot_csv(double t, double epsilon, int samples) {
  if (samples < 2) throw std::invalid_argument("example1_plot_csv: need at least two samples");
  std::string out = "x,u\n";
  char buf[80];
  Example1Params p{epsilon};
  for (int i = 0; i < samples; ++i) {
    double x = 2.0 * (i + 0.5) / samples;
    double u = epsilon > 0.0 ? example1_perturbed(t, x, p) : example1_periodic(t, x);
    std::snprintf(buf, sizeof buf, "%.16e,%.16e\n", x, u);
    out += buf;
  }
  return out;
}

}  // namespace decaylab
