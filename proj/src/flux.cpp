#include "decaylab/flux.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace decaylab {

FluxModel::FluxModel(double umin, double umax, std::vector<PiecewisePoly> components)
    : u_min(umin), u_max(umax), comp(std::move(components)) {
  if (!(u_min < u_max)) throw std::invalid_argument("flux: empty state interval");
  if (comp.empty()) throw std::invalid_argument("flux: no components");
  for (const auto& f : comp) {
    if (to_double(f.lo()) > u_min || to_double(f.hi()) < u_max)
      throw std::invalid_argument("flux: component domain does not cover the state interval");
    if (!f.continuous()) throw std::invalid_argument("flux: discontinuous component");
  }
  for (const auto& f : comp) {
    lip.push_back(f.deriv_bound(u_min, u_max));
    fast.push_back(CompiledPiecewise::from(f));
  }
}

FluxModel flux_preset(const std::string& name) {
  const Rat lo(-2), hi(2);
  if (name == "burgers") {
    Poly h({Rat(0), Rat(0), Rat(1, 2)});
    return FluxModel(-2, 2, {PiecewisePoly::single(lo, hi, h)});
  }
  if (name == "example1") {
    // max(0, -u): slope -1 left of 0, identically 0 right of it
    PiecewisePoly f({lo, Rat(0), hi}, {Poly({Rat(0), Rat(-1)}), Poly({Rat(0)})});
    return FluxModel(-2, 2, {f});
  }
  if (name == "cubic2d") {
    Poly h({Rat(0), Rat(0), Rat(1, 2)});
    Poly g({Rat(0), Rat(0), Rat(0), Rat(1, 3)});
    return FluxModel(-2, 2, {PiecewisePoly::single(lo, hi, h), PiecewisePoly::single(lo, hi, g)});
  }
  if (name == "linear2d") {
    Poly a({Rat(0), Rat(1)});
    Poly b({Rat(0), Rat(1, 2)});
    return FluxModel(-2, 2, {PiecewisePoly::single(lo, hi, a), PiecewisePoly::single(lo, hi, b)});
  }
  throw std::invalid_argument("unknown flux preset '" + name + "'");
}

FluxModel flat_band_flux_2d(const Rat& m, const Rat& delta) {
  if (delta <= 0) throw std::invalid_argument("flat_band_flux_2d: delta must be positive");
  const Rat lo = m - 2, hi = m + 2;
  const Rat a = m - delta, b = m + delta;
  Poly burg({Rat(0), Rat(0), Rat(1, 2)});
  // phi2: (u-a)^2/2 below the band, 0 on it, (u-b)^2/2 above
  Poly left({a * a / 2, -a, Rat(1, 2)});
  Poly right({b * b / 2, -b, Rat(1, 2)});
  PiecewisePoly band({lo, a, b, hi}, {left, Poly({Rat(0)}), right});
  return FluxModel(to_double(lo), to_double(hi),
                   {PiecewisePoly::single(lo, hi, burg), band});
}

PiecewisePoly directional_component(const FluxModel& phi, const RatVec& xi) {
  if (static_cast<int>(xi.size()) != phi.dim())
    throw std::invalid_argument("directional_component: dimension mismatch");
  std::vector<const PiecewisePoly*> fs;
  for (const auto& f : phi.comp) fs.push_back(&f);
  return PiecewisePoly::combine(fs, xi);
}

PiecewisePoly directional_component(const FluxModel& phi, std::span<const double> xi) {
  RatVec w;
  for (double x : xi) w.emplace_back(x);  // exact double -> rational
  return directional_component(phi, w);
}

bool is_affine_on(const PiecewisePoly& f, double a, double b, double /*tau*/) {
  if (!(a < b)) throw std::invalid_argument("is_affine_on: empty interval");
  Rat ra(a), rb(b);
  const Poly* slope_ref = nullptr;
  Poly first_diff;
  for (std::size_t i = 0; i < f.pieces.size(); ++i) {
    if (!(f.breaks[i] < rb && f.breaks[i + 1] > ra)) continue;  // no interior overlap
    const Poly& p = f.pieces[i];
    if (p.degree() > 1) return false;
    if (!slope_ref) {
      first_diff = p;
      slope_ref = &first_diff;
    } else if (!(p - first_diff).is_zero()) {
      // continuity plus equal restriction means truly affine; any difference
      // in coefficients on overlapping pieces breaks affineness
      return false;
    }
  }
  return slope_ref != nullptr;
}

bool is_affine_on(const std::function<double(double)>& f, double a, double b, double tau, int samples) {
  if (!(a < b)) throw std::invalid_argument("is_affine_on: empty interval");
  double fa = f(a), fb = f(b);
  double sup = 0, dev = 0;
  for (int i = 0; i < samples; ++i) {
    double t = static_cast<double>(i) / (samples - 1);
    double u = a + t * (b - a);
    double v = f(u);
    double chord = fa + t * (fb - fa);
    sup = std::max(sup, std::abs(v));
    dev = std::max(dev, std::abs(v - chord));
  }
  return dev <= tau * (1.0 + sup);
}

namespace {

// Coefficient vectors of phi - (componentwise affine interpolant over [a,b]),
// one column per (piece, degree) pair restricted to the interval interior.
std::vector<RatVec> residual_span(const FluxModel& phi, const Rat& a, const Rat& b) {
  const int n = phi.dim();
  std::vector<std::vector<Poly>> residual(static_cast<std::size_t>(n));
  std::vector<Rat> cuts;  // union of interior breakpoints
  for (const auto& f : phi.comp)
    for (const auto& brk : f.breaks)
      if (brk > a && brk < b) cuts.push_back(brk);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Rat> nodes;
  nodes.push_back(a);
  for (const auto& c : cuts) nodes.push_back(c);
  nodes.push_back(b);

  std::vector<RatVec> cols;
  for (std::size_t seg = 0; seg + 1 < nodes.size(); ++seg) {
    Rat mid = (nodes[seg] + nodes[seg + 1]) / 2;
    std::vector<Poly> segpoly(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const auto& f = phi.comp[static_cast<std::size_t>(i)];
      std::size_t src = 0;
      while (src + 1 < f.pieces.size() && mid >= f.breaks[src + 1]) ++src;
      // affine interpolant of component i over [a, b]
      Rat fa = f.eval_exact(a), fb = f.eval_exact(b);
      Rat slope = (fb - fa) / (b - a);
      Poly interp({fa - slope * a, slope});
      segpoly[static_cast<std::size_t>(i)] = f.pieces[src] - interp;
    }
    int maxdeg = -1;
    for (const auto& p : segpoly) maxdeg = std::max(maxdeg, p.degree());
    for (int k = 0; k <= maxdeg; ++k) {
      RatVec col(static_cast<std::size_t>(n), Rat(0));
      bool nonzero = false;
      for (int i = 0; i < n; ++i) {
        const auto& cs = segpoly[static_cast<std::size_t>(i)].c;
        if (k < static_cast<int>(cs.size())) {
          col[static_cast<std::size_t>(i)] = cs[static_cast<std::size_t>(k)];
          nonzero = nonzero || cs[static_cast<std::size_t>(k)] != 0;
        }
      }
      if (nonzero) cols.push_back(std::move(col));
    }
  }
  return cols;
}

unsigned rat_bits(const Rat& q) {
  return static_cast<unsigned>(msb(denominator(q)) + msb(numerator(q) == 0 ? 1 : abs(numerator(q))) + 2);
}

}  // namespace

bool NonlinearitySet::contains(double u) const {
  const double slack = resolution / 2;
  for (const auto& [a, b] : intervals) {
    if (u >= a - slack && u <= b + slack) return true;
  }
  return false;
}

bool NonlinearitySet::intersects_open(double a, double b) const {
  for (const auto& [lo, hi] : intervals) {
    if (lo < b && hi > a) return true;
  }
  return false;
}

NonlinearitySet nonlinearity_set(const FluxModel& phi, const PeriodStructure& s, double delta_grid, double tau) {
  if (delta_grid <= 0 || tau <= 0)
    throw std::invalid_argument("nonlinearity_set: delta_grid and tau must be positive");
  const bool whole_vector = s.torus_dim() == 0;  // G = H = R^n: no dual directions
  const auto& duals = s.dual.generators;
  const int d = static_cast<int>(duals.size());

  // decide arithmetic path: exact when all data stays small-rational
  unsigned bits = 0;
  for (const auto& f : phi.comp) bits = std::max(bits, f.max_denominator_bits());
  for (const auto& xi : duals)
    for (const auto& q : xi) bits = std::max(bits, rat_bits(q));
  const Rat dg(delta_grid);
  bits = std::max(bits, rat_bits(dg));
  const bool exact_path = bits <= 64;

  NonlinearitySet out;
  out.resolution = delta_grid;
  out.tolerance = tau;
  out.exact = exact_path;

  const Rat lo(phi.u_min), hi(phi.u_max);
  std::vector<Rat> grid;
  for (Rat u = lo; u <= hi; u += dg) grid.push_back(u);
  if (grid.back() != hi) grid.push_back(hi);

  std::vector<bool> accepted(grid.size(), false);
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    Rat a = std::max(lo, grid[gi] - dg);
    Rat b = std::min(hi, grid[gi] + dg);
    if (!(a < b)) continue;
    auto cols = residual_span(phi, a, b);
    if (whole_vector) {
      accepted[gi] = !cols.empty();
      continue;
    }
    if (cols.empty()) {
      accepted[gi] = false;  // all components affine: every dual direction is orthogonal
      continue;
    }
    // u is accepted iff no nonzero integer combination of the dual generators
    // is orthogonal to the residual span, i.e. iff B = [xi_i . w_j] has full
    // row rank d.
    if (exact_path) {
      RatMat bmat(static_cast<std::size_t>(d), RatVec(cols.size()));
      for (int i = 0; i < d; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
          bmat[static_cast<std::size_t>(i)][j] = dot(duals[static_cast<std::size_t>(i)], cols[j]);
      accepted[gi] = rank(std::move(bmat)) == d;
    } else {
      Eigen::MatrixXd bmat(d, static_cast<Eigen::Index>(cols.size()));
      for (int i = 0; i < d; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
          bmat(i, static_cast<Eigen::Index>(j)) = to_double(dot(duals[static_cast<std::size_t>(i)], cols[j]));
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(bmat);
      const auto& sv = svd.singularValues();
      int r = 0;
      for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tau * sv(0)) ++r;
      accepted[gi] = r == d;
    }
  }

  // closure of the accepted grid, merged into intervals
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    if (!accepted[gi]) continue;
    std::size_t gj = gi;
    while (gj + 1 < grid.size() && accepted[gj + 1]) ++gj;
    out.intervals.emplace_back(to_double(grid[gi]), to_double(grid[gj]));
    gi = gj;
  }
  return out;
}

GnCheck check_genuine_nonlinearity(const NonlinearitySet& f, double m, std::span<const double> eps_list) {
  GnCheck res;
  res.gn_ok = f.contains(m);
  res.theorem1_ok = !eps_list.empty();
  for (double eps : eps_list) {
    if (eps <= 0) throw std::invalid_argument("check_genuine_nonlinearity: eps must be positive");
    if (!(f.intersects_open(m - eps, m) && f.intersects_open(m, m + eps))) {
      res.theorem1_ok = false;
      break;
    }
  }
  return res;
}

std::vector<double> lipschitz_bound(const FluxModel& phi, double a, double b) {
  if (a < phi.u_min - 1e-12 || b > phi.u_max + 1e-12 || !(a < b))
    throw std::invalid_argument("lipschitz_bound: interval outside the state range");
  std::vector<double> out;
  for (const auto& f : phi.comp) out.push_back(f.deriv_bound(a, b));
  return out;
}

}  // namespace decaylab
