#include "decaylab/solver.hpp"

#include "decaylab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace decaylab {

SchemeKind scheme_from_name(const std::string& name) {
  if (name == "llf" || name == "local_lax_friedrichs") return SchemeKind::LocalLaxFriedrichs;
  if (name == "godunov" || name == "godunov_1d") return SchemeKind::Godunov1D;
  if (name == "eo" || name == "engquist_osher") return SchemeKind::EngquistOsher;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

void SchemeConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 0.9)) throw std::invalid_argument("scheme: cfl must lie in (0, 0.9]");
  if (!(t_end > 0.0)) throw std::invalid_argument("scheme: t_end must be positive");
  if (!(u_lo < u_hi)) throw std::invalid_argument("scheme: empty state interval");
  double prev = -1e-300;
  for (double t : output_times) {
    if (t < 0.0 || t > t_end + 1e-12) throw std::invalid_argument("scheme: output time outside [0, t_end]");
    if (t < prev) throw std::invalid_argument("scheme: output times not sorted");
    prev = t;
  }
}

NumericalFlux NumericalFlux::build(const PiecewisePoly& component, SchemeKind scheme, double u_lo, double u_hi) {
  NumericalFlux nf;
  nf.scheme = scheme;
  nf.phi = CompiledPiecewise::from(component);
  nf.lambda = component.deriv_bound(u_lo, u_hi);

  // monotonicity nodes: state interval ends, interior breakpoints, interior
  // derivative roots
  std::vector<double> nodes{u_lo, u_hi};
  for (std::size_t i = 0; i < nf.phi.breaks.size(); ++i) {
    double b = nf.phi.breaks[i];
    if (b > u_lo && b < u_hi) nodes.push_back(b);
  }
  for (std::size_t p = 0; p < nf.phi.coeff.size(); ++p) {
    const auto& c = nf.phi.coeff[p];
    // derivative 3 c3 u^2 + 2 c2 u + c1
    double a2 = 3 * c[3], a1 = 2 * c[2], a0 = c[1];
    std::vector<double> roots;
    if (a2 == 0.0) {
      if (a1 != 0.0) roots.push_back(-a0 / a1);
    } else {
      double disc = a1 * a1 - 4 * a2 * a0;
      if (disc >= 0.0) {
        double sq = std::sqrt(disc);
        roots.push_back((-a1 - sq) / (2 * a2));
        roots.push_back((-a1 + sq) / (2 * a2));
      }
    }
    double plo = nf.phi.breaks[p], phi_ = nf.phi.breaks[p + 1];
    for (double r : roots) {
      if (r > std::max(u_lo, plo) && r < std::min(u_hi, phi_)) nodes.push_back(r);
    }
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  nf.nodes = nodes;
  nf.phi_at.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) nf.phi_at[i] = nf.phi.eval(nodes[i]);
  nf.pos_cum.assign(nodes.size(), 0.0);
  nf.neg_cum.assign(nodes.size(), 0.0);
  nf.increasing.assign(nodes.size() > 0 ? nodes.size() - 1 : 0, false);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    double dphi = nf.phi_at[i + 1] - nf.phi_at[i];
    nf.increasing[i] = dphi >= 0.0;
    nf.pos_cum[i + 1] = nf.pos_cum[i] + std::max(0.0, dphi);
    nf.neg_cum[i + 1] = nf.neg_cum[i] + std::min(0.0, dphi);
  }
  return nf;
}

namespace {

std::size_t locate(const std::vector<double>& nodes, double u) {
  if (u <= nodes.front()) return 0;
  if (u >= nodes.back()) return nodes.size() - 2;
  std::size_t lo = 0, hi = nodes.size() - 2;
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (u >= nodes[mid])
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace

double NumericalFlux::pos_part(double u) const {
  std::size_t i = locate(nodes, u);
  return pos_cum[i] + (increasing[i] ? phi.eval(u) - phi_at[i] : 0.0);
}

double NumericalFlux::neg_part(double u) const {
  std::size_t i = locate(nodes, u);
  return neg_cum[i] + (increasing[i] ? 0.0 : phi.eval(u) - phi_at[i]);
}

std::pair<double, double> NumericalFlux::range(double a, double b) const {
  double fa = phi.eval(a), fb = phi.eval(b);
  double mn = std::min(fa, fb), mx = std::max(fa, fb);
  std::size_t i = locate(nodes, a);
  for (std::size_t j = i + 1; j < nodes.size() && nodes[j] < b; ++j) {
    if (nodes[j] <= a) continue;
    mn = std::min(mn, phi_at[j]);
    mx = std::max(mx, phi_at[j]);
  }
  return {mn, mx};
}

double NumericalFlux::operator()(double a, double b) const {
  switch (scheme) {
    case SchemeKind::LocalLaxFriedrichs:
      return 0.5 * (phi.eval(a) + phi.eval(b)) - 0.5 * lambda * (b - a);
    case SchemeKind::Godunov1D:
      return a <= b ? range(a, b).first : range(b, a).second;
    case SchemeKind::EngquistOsher:
      return pos_part(a) + neg_part(b) + phi_at.front();
  }
  return 0.0;
}

double cfl_dt(const GridField& grid, std::span<const double> lipschitz, double cfl, double output_cadence) {
  double s = 0;
  for (int a = 0; a < grid.dim; ++a) {
    if (lipschitz[static_cast<std::size_t>(a)] < 0) throw std::invalid_argument("cfl_dt: negative Lipschitz bound");
    s += lipschitz[static_cast<std::size_t>(a)] / grid.dx[a];
  }
  if (s <= 0.0) return output_cadence;
  return cfl / s;
}

namespace {

struct StencilOps {
  std::vector<NumericalFlux> flux;  // one per axis

  static StencilOps build(const FluxModel& phi, const SchemeConfig& cfg, int dim) {
    if (phi.dim() != dim) throw std::invalid_argument("flux dimension does not match the grid");
    if (cfg.scheme == SchemeKind::Godunov1D && dim != 1)
      throw std::invalid_argument("godunov flux is only available in one dimension");
    StencilOps ops;
    for (int a = 0; a < dim; ++a)
      ops.flux.push_back(NumericalFlux::build(phi.comp[static_cast<std::size_t>(a)], cfg.scheme, cfg.u_lo, cfg.u_hi));
    return ops;
  }

  double monotone_dt_limit(const GridField& u) const {
    double s = 0;
    for (int a = 0; a < u.dim; ++a) s += flux[static_cast<std::size_t>(a)].lambda / u.dx[a];
    return s <= 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / s;
  }

  void apply(const GridField& u, double dt, GridField& out) const {
    out = u;
    const int nx = u.cells[0], ny = u.cells[1], nz = u.cells[2];
    std::vector<double> face(u.size());
    for (int a = 0; a < u.dim; ++a) {
      const NumericalFlux& f = flux[static_cast<std::size_t>(a)];
      const double mu = dt / u.dx[a];
      // face flux between c and its +e_a neighbor
      parallel_chunks(u.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t c = lo; c < hi; ++c) {
          int i = static_cast<int>(c % static_cast<std::size_t>(nx));
          int j = static_cast<int>((c / static_cast<std::size_t>(nx)) % static_cast<std::size_t>(ny));
          int k = static_cast<int>(c / (static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)));
          int in = i, jn = j, kn = k;
          if (a == 0) in = in + 1 == nx ? 0 : in + 1;
          if (a == 1) jn = jn + 1 == ny ? 0 : jn + 1;
          if (a == 2) kn = kn + 1 == nz ? 0 : kn + 1;
          face[c] = f(u.data[c], u.at(in, jn, kn));
        }
      });
      parallel_chunks(u.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t c = lo; c < hi; ++c) {
          int i = static_cast<int>(c % static_cast<std::size_t>(nx));
          int j = static_cast<int>((c / static_cast<std::size_t>(nx)) % static_cast<std::size_t>(ny));
          int k = static_cast<int>(c / (static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)));
          int ip = i, jp = j, kp = k;
          if (a == 0) ip = ip == 0 ? nx - 1 : ip - 1;
          if (a == 1) jp = jp == 0 ? ny - 1 : jp - 1;
          if (a == 2) kp = kp == 0 ? nz - 1 : kp - 1;
          out.data[c] -= mu * (face[c] - face[u.index(ip, jp, kp)]);
        }
      });
    }
  }
};

double axis_tv(const GridField& u, int a) {
  double tv = 0;
  const int nx = u.cells[0], ny = u.cells[1], nz = u.cells[2];
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        int in = i, jn = j, kn = k;
        if (a == 0) in = (i + 1) % nx;
        if (a == 1) jn = (j + 1) % ny;
        if (a == 2) kn = (k + 1) % nz;
        tv += std::abs(u.at(in, jn, kn) - u.at(i, j, k));
      }
  return tv * u.cell_volume();
}

}  // namespace

GridField step(const GridField& u, const FluxModel& phi, const SchemeConfig& cfg, double dt) {
  cfg.validate();
  StencilOps ops = StencilOps::build(phi, cfg, u.dim);
  if (dt > ops.monotone_dt_limit(u) * (1.0 + 1e-12))
    throw std::invalid_argument("step: dt too large, the update would not be monotone");
  if (u.min_value() < cfg.u_lo - 1e-12 || u.max_value() > cfg.u_hi + 1e-12)
    throw std::invalid_argument("step: state outside the configured bounds");
  GridField out;
  ops.apply(u, dt, out);
  return out;
}

Trajectory solve(const ProblemSpec& spec) {
  spec.scheme.validate();
  GridField u(spec.dim, spec.cells, spec.dx, spec.origin);
  u = GridField::sample(spec.dim, spec.cells, spec.dx, spec.origin, spec.u0);
  if (u.min_value() < spec.scheme.u_lo - 1e-12 || u.max_value() > spec.scheme.u_hi + 1e-12)
    throw std::invalid_argument("solve: initial data escapes the configured state bounds");

  Trajectory traj;
  traj.flux = spec.flux;
  traj.cfg = spec.scheme;

  std::vector<double> outputs = spec.scheme.output_times;
  if (outputs.empty() || outputs.front() > 0.0) outputs.insert(outputs.begin(), 0.0);

  StencilOps ops = StencilOps::build(spec.flux, spec.scheme, spec.dim);
  std::vector<double> lam;
  for (const auto& f : ops.flux) lam.push_back(f.lambda);
  double cadence = outputs.back() > 0 ? outputs.back() : spec.scheme.t_end;
  for (std::size_t i = 0; i + 1 < outputs.size(); ++i)
    if (outputs[i + 1] > outputs[i]) cadence = std::min(cadence, outputs[i + 1] - outputs[i]);
  double dt_nominal = spec.scheme.dt_override ? *spec.scheme.dt_override : cfl_dt(u, lam, spec.scheme.cfl, cadence);
  if (dt_nominal > ops.monotone_dt_limit(u) * (1.0 + 1e-12))
    throw std::invalid_argument("solve: requested dt violates the monotonicity limit");
  traj.dt_nominal = dt_nominal;

  double t = 0.0;
  GridField scratch;
  if (spec.scheme.record_steps) {
    traj.step_times.push_back(0.0);
    traj.steps.push_back(u);
  }
  long steps_done = 0;
  for (double target : outputs) {
    while (t < target - 1e-12 * std::max(1.0, target)) {
      double dt = std::min(dt_nominal, target - t);
      ops.apply(u, dt, scratch);
      std::swap(u, scratch);
      t = (target - t <= dt_nominal * (1.0 + 1e-12)) ? target : t + dt;
      ++steps_done;
      if (spec.scheme.record_steps) {
        traj.step_times.push_back(t);
        traj.steps.push_back(u);
      }
      if (steps_done % 64 == 0 && !u.finite()) {
        traj.aborted = true;
        return traj;
      }
    }
    if (!u.finite()) {
      traj.aborted = true;
      return traj;
    }
    traj.times.push_back(target);
    traj.states.push_back(u);
  }

  for (std::size_t i = 0; i + 1 < traj.times.size(); ++i) {
    TimeContinuityEntry e;
    e.t0 = traj.times[i];
    e.t1 = traj.times[i + 1];
    e.l1_diff = l1_distance(traj.states[i], traj.states[i + 1]);
    double b = 0;
    for (int a = 0; a < spec.dim; ++a)
      b += 2.0 * lam[static_cast<std::size_t>(a)] / spec.dx[a] * axis_tv(traj.states[i], a);
    e.bound = (e.t1 - e.t0) * b;
    traj.continuity.push_back(e);
  }
  return traj;
}

const GridField& Trajectory::at_time(double t, double tol) const {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (std::abs(times[i] - t) <= tol) return states[i];
  }
  throw std::invalid_argument("trajectory has no snapshot at the requested time");
}

double TestBump::operator()(double t, const Point& x, int dim) const {
  auto g = [](double s) {
    double a = 1.0 - s * s;
    return a > 0.0 ? a * a : 0.0;
  };
  double v = g((t - t_center) / t_radius);
  for (int a = 0; a < dim; ++a) v *= g((x[a] - center[a]) / radius[a]);
  return v;
}

EntropyResidual entropy_residual(const Trajectory& traj, double k, const TestBump& f) {
  if (traj.steps.size() < 2)
    throw std::invalid_argument("entropy_residual: trajectory must be recorded with record_steps");
  const GridField& g0 = traj.steps.front();
  for (int a = 0; a < g0.dim; ++a) {
    double lo = g0.origin[a] + g0.dx[a];
    double hi = g0.origin[a] + g0.axis_length(a) - g0.dx[a];
    if (f.center[a] - f.radius[a] < lo || f.center[a] + f.radius[a] > hi)
      throw std::invalid_argument("entropy_residual: test function support touches the boundary");
  }
  if (f.t_center - f.t_radius < traj.step_times.front() || f.t_center + f.t_radius > traj.step_times.back())
    throw std::invalid_argument("entropy_residual: test function support touches the time boundary");

  std::vector<NumericalFlux> flux;
  for (int a = 0; a < g0.dim; ++a)
    flux.push_back(NumericalFlux::build(traj.flux.comp[static_cast<std::size_t>(a)], traj.cfg.scheme,
                                        traj.cfg.u_lo, traj.cfg.u_hi));

  EntropyResidual res;
  const double vol = g0.cell_volume();
  const int nx = g0.cells[0], ny = g0.cells[1], nz = g0.cells[2];
  for (std::size_t n = 0; n + 1 < traj.steps.size(); ++n) {
    const GridField& u = traj.steps[n];
    const double t0 = traj.step_times[n], t1 = traj.step_times[n + 1];
    const double dt = t1 - t0;
    for (int kk = 0; kk < nz; ++kk)
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
          const Point xc = g0.center(i, j, kk);
          const double uc = u.at(i, j, kk);
          double term = std::abs(uc - k) * (f(t1, xc, g0.dim) - f(t0, xc, g0.dim)) * vol;
          res.value += term;
          res.scale += std::abs(term);
          for (int a = 0; a < g0.dim; ++a) {
            int in = i, jn = j, kn = kk;
            if (a == 0) in = (i + 1) % nx;
            if (a == 1) jn = (j + 1) % ny;
            if (a == 2) kn = (kk + 1) % nz;
            const double un = u.at(in, jn, kn);
            const NumericalFlux& F = flux[static_cast<std::size_t>(a)];
            const double q = F(std::max(uc, k), std::max(un, k)) - F(std::min(uc, k), std::min(un, k));
            const Point xn = g0.center(in, jn, kn);
            // neighbor center, unwrapped across the periodic seam
            Point xnb = xn;
            if (xn[a] < xc[a]) xnb[a] = xc[a] + g0.dx[a];
            double tf = dt * q * (f(t1, xnb, g0.dim) - f(t1, xc, g0.dim)) / g0.dx[a] * vol;
            res.value += tf;
            res.scale += std::abs(tf);
          }
        }
  }
  return res;
}

}  // namespace decaylab
