#include "decaylab/setup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace decaylab {

Sampler InitialData::u0() const {
  Sampler p = periodic_part;
  Sampler v = perturbation;
  if (!v) return p;
  return [p, v](const Point& x) { return p(x) + v(x); };
}

InitialData make_initial_data(Sampler p, PeriodStructure s, Sampler v, double support_radius,
                              double lo, double hi, int mean_resolution) {
  InitialData d;
  d.periodic_part = std::move(p);
  d.period = std::move(s);
  d.perturbation = std::move(v);
  d.support_radius = support_radius;
  d.lo = lo;
  d.hi = hi;
  auto m = torus_mean(d.periodic_part, d.period, mean_resolution);
  d.mean = m.mean;
  d.mean_richardson = m.richardson;
  return d;
}

VanishingReport verify_vanishing(const Sampler& v, std::span<const double> lambdas, double probe_radius,
                                 int dim, int resolution) {
  if (probe_radius <= 0) throw std::invalid_argument("verify_vanishing: probe radius must be positive");
  if (dim < 1 || dim > 3) throw std::invalid_argument("verify_vanishing: dim must be 1..3");
  VanishingReport rep;
  const double pitch = 2.0 * probe_radius / resolution;
  const double fractions[] = {0.25, 0.5, 0.75, 1.0};
  for (double lambda : lambdas) {
    VanishingReport::Row row;
    row.lambda = lambda;
    for (double frac : fractions) {
      const double half = frac * probe_radius;
      const long n = std::lround(half / pitch);
      double count = 0;
      // midpoint samples of [-half, half]^dim on the common pitch
      const long total = dim == 1 ? 2 * n : dim == 2 ? 4 * n * n : 8 * n * n * n;
      for (long flat = 0; flat < total; ++flat) {
        long rem = flat;
        Point x{0, 0, 0};
        for (int a = 0; a < dim; ++a) {
          long idx = rem % (2 * n);
          rem /= 2 * n;
          x[a] = -half + (idx + 0.5) * pitch;
        }
        if (std::abs(v(x)) > lambda) count += 1;
      }
      row.probe_sizes.push_back(half);
      row.measures.push_back(count * std::pow(pitch, dim));
    }
    const double last = row.measures.back();
    const double prev = row.measures[row.measures.size() - 2];
    row.pass = (last - prev) <= 0.01 * std::max(prev, 1e-12);
    rep.rows.push_back(std::move(row));
    rep.pass = rep.pass && rep.rows.back().pass;
  }
  return rep;
}

namespace {

// Axis-aligned lattice: each generator has exactly one nonzero component.
// Returns the per-axis periods (0 on axes without a generator).
std::array<double, 3> axis_periods(const PeriodStructure& s, int dim) {
  std::array<double, 3> period{0, 0, 0};
  for (const auto& e : s.lattice.generators) {
    int axis = -1;
    for (int a = 0; a < dim; ++a) {
      if (e[static_cast<std::size_t>(a)] != 0) {
        if (axis >= 0) throw std::invalid_argument("envelopes need an axis-aligned lattice");
        axis = a;
      }
    }
    if (axis < 0) throw std::invalid_argument("envelopes: zero lattice generator");
    if (period[axis] != 0) throw std::invalid_argument("envelopes: duplicate lattice axis");
    period[axis] = std::abs(to_double(e[static_cast<std::size_t>(axis)]));
  }
  return period;
}

// Nearest-cell lookup; zero outside the sampled domain.
double lookup_or_zero(const GridField& g, const Point& x) {
  int idx[3] = {0, 0, 0};
  for (int a = 0; a < g.dim; ++a) {
    double rel = (x[a] - g.origin[a]) / g.dx[a];
    long i = static_cast<long>(std::floor(rel));
    if (i < 0 || i >= g.cells[a]) return 0.0;
    idx[a] = static_cast<int>(i);
  }
  return g.at(idx[0], idx[1], idx[2]);
}

}  // namespace

EnvelopeSet periodic_envelopes(const GridField& v, const PeriodStructure& s, int r, double support_radius) {
  if (r < 1) throw std::invalid_argument("periodic_envelopes: r must be a positive integer");
  if (s.ambient_dim() != v.dim) throw std::invalid_argument("periodic_envelopes: dimension mismatch");
  if (!s.constancy.empty())
    throw std::invalid_argument("periodic_envelopes: the period group must be a lattice (no constancy)");
  auto period = axis_periods(s, v.dim);
  std::array<int, 3> cells{1, 1, 1};
  std::array<double, 3> dx{1, 1, 1}, origin{0, 0, 0};
  for (int a = 0; a < v.dim; ++a) {
    if (period[a] <= 0) throw std::invalid_argument("periodic_envelopes: lattice does not span the axes");
    double cellsf = r * period[a] / v.dx[a];
    if (std::abs(cellsf - std::lround(cellsf)) > 1e-9)
      throw std::invalid_argument("periodic_envelopes: grid spacing does not divide the cell edge");
    cells[a] = static_cast<int>(std::lround(cellsf));
    dx[a] = v.dx[a];
    origin[a] = -0.5 * r * period[a];
  }
  if (support_radius > 0) {
    for (int a = 0; a < v.dim; ++a) {
      if (v.origin[a] > -support_radius || v.origin[a] + v.axis_length(a) < support_radius)
        throw std::invalid_argument("periodic_envelopes: sampled domain does not cover the declared support");
    }
  }

  EnvelopeSet env;
  env.r = r;
  env.v_plus = GridField(v.dim, cells, dx, origin);
  env.v_minus = GridField(v.dim, cells, dx, origin);
  env.v_abs = GridField(v.dim, cells, dx, origin);

  // translate index ranges covering the sampled domain
  std::array<long, 3> klo{0, 0, 0}, khi{0, 0, 0};
  for (int a = 0; a < v.dim; ++a) {
    double span = r * period[a];
    klo[a] = static_cast<long>(std::floor((v.origin[a] - origin[a] - span) / span)) - 1;
    khi[a] = static_cast<long>(std::ceil((v.origin[a] + v.axis_length(a) - origin[a]) / span)) + 1;
  }

  for (int k = 0; k < cells[2]; ++k)
    for (int j = 0; j < cells[1]; ++j)
      for (int i = 0; i < cells[0]; ++i) {
        Point x = env.v_plus.center(i, j, k);
        // the lattice orbit leaves any bounded support, so 0 always competes
        double vmax = 0.0, vmin = 0.0, vabs = 0.0;
        std::array<long, 3> kk{0, 0, 0};
        for (kk[0] = klo[0]; kk[0] <= khi[0]; ++kk[0])
          for (kk[1] = klo[1]; kk[1] <= khi[1]; ++kk[1])
            for (kk[2] = klo[2]; kk[2] <= khi[2]; ++kk[2]) {
              Point xt = x;
              for (int a = 0; a < v.dim; ++a) xt[a] += r * period[a] * static_cast<double>(kk[a]);
              double val = lookup_or_zero(v, xt);
              vmax = std::max(vmax, val);
              vmin = std::min(vmin, val);
              vabs = std::max(vabs, std::abs(val));
              if (v.dim < 3) break;
            }
        env.v_plus.at(i, j, k) = vmax;
        env.v_minus.at(i, j, k) = vmin;
        env.v_abs.at(i, j, k) = vabs;
      }
  const double count = static_cast<double>(env.v_abs.size());
  env.eps_plus = tree_sum(env.v_plus.data) / count;
  env.eps_minus = tree_sum(env.v_minus.data) / count;
  env.m_r = tree_sum(env.v_abs.data) / count;
  return env;
}

BracketingData build_bracketing_data(const Sampler& p, const GridField& v, const EnvelopeSet& env,
                                     double alpha_minus, double alpha_plus) {
  const GridField& ref = env.v_plus;
  GridField pgrid = GridField::sample(ref.dim, ref.cells, ref.dx, ref.origin, p);
  const double m = tree_sum(pgrid.data) / static_cast<double>(pgrid.size());
  if (!(std::abs(env.eps_plus) < alpha_plus - m))
    throw std::invalid_argument("build_bracketing_data: |eps+| >= alpha+ - m, margin " +
                                std::to_string(alpha_plus - m - std::abs(env.eps_plus)));
  if (!(std::abs(env.eps_minus) < m - alpha_minus))
    throw std::invalid_argument("build_bracketing_data: |eps-| >= m - alpha-, margin " +
                                std::to_string(m - alpha_minus - std::abs(env.eps_minus)));
  BracketingData out;
  out.grid_mean_p = m;
  out.u0_plus = pgrid;
  out.u0_minus = pgrid;
  out.u0 = pgrid;
  const double shift_plus = alpha_plus - m - env.eps_plus;
  const double shift_minus = m - alpha_minus + env.eps_minus;
  for (int k = 0; k < ref.cells[2]; ++k)
    for (int j = 0; j < ref.cells[1]; ++j)
      for (int i = 0; i < ref.cells[0]; ++i) {
        out.u0_plus.at(i, j, k) += env.v_plus.at(i, j, k) + shift_plus;
        out.u0_minus.at(i, j, k) += env.v_minus.at(i, j, k) - shift_minus;
        out.u0.at(i, j, k) += lookup_or_zero(v, ref.center(i, j, k));
      }
  out.mean_plus = tree_sum(out.u0_plus.data) / static_cast<double>(out.u0_plus.size());
  out.mean_minus = tree_sum(out.u0_minus.data) / static_cast<double>(out.u0_minus.size());
  return out;
}

InitialData nondecaying_example(double delta, const PeriodStructure& s, const RatVec& xi, int r,
                                const Sampler& v_profile, double m) {
  if (delta <= 0) throw std::invalid_argument("nondecaying_example: delta must be positive");
  const int n = s.ambient_dim();
  if (static_cast<int>(xi.size()) != n) throw std::invalid_argument("nondecaying_example: xi has wrong length");
  bool nonzero = false;
  for (const auto& q : xi) nonzero = nonzero || q != 0;
  if (!nonzero) throw std::invalid_argument("nondecaying_example: xi must be nonzero");
  for (const auto& h : s.constancy) {
    if (dot(xi, h) != 0)
      throw std::invalid_argument("nondecaying_example: xi is not in the dual group (xi.h != 0)");
  }
  std::vector<long> pairings;
  for (const auto& e : s.lattice.generators) {
    Rat q = dot(xi, e);
    if (!is_integer(q))
      throw std::invalid_argument("nondecaying_example: xi is not in the dual group (non-integer pairing)");
    pairings.push_back(static_cast<long>(numerator(q).convert_to<long long>()));
  }
  long g = 0;
  for (long c : pairings) g = std::gcd(g, std::labs(c));
  if (g != r)
    throw std::invalid_argument("nondecaying_example: r must equal the range index of xi, which is " +
                                std::to_string(g));

  // e0 = sum k_j e_j with xi.e0 = r, via iterated extended gcd
  std::vector<long> coeff(pairings.size(), 0);
  {
    long acc = 0;
    for (std::size_t j = 0; j < pairings.size(); ++j) {
      if (pairings[j] == 0) continue;
      if (acc == 0) {
        acc = pairings[j];
        coeff[j] = 1;
        continue;
      }
      // extended gcd of (acc, pairings[j])
      long a = acc, b = pairings[j];
      long x0 = 1, x1 = 0, y0 = 0, y1 = 1;
      while (b != 0) {
        long q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
      }
      for (std::size_t l = 0; l <= j; ++l) coeff[l] *= x0;
      coeff[j] += y0;
      acc = a;
    }
    if (acc < 0) {
      for (auto& c : coeff) c = -c;
      acc = -acc;
    }
  }
  Point e0{0, 0, 0};
  for (std::size_t j = 0; j < s.lattice.generators.size(); ++j)
    for (int i = 0; i < n; ++i)
      e0[i] += static_cast<double>(coeff[j]) * to_double(s.lattice.generators[j][static_cast<std::size_t>(i)]);

  std::array<double, 3> xid{0, 0, 0};
  for (int i = 0; i < n; ++i) xid[i] = to_double(xi[static_cast<std::size_t>(i)]);
  const double rr = static_cast<double>(r);
  Sampler u0 = [=](const Point& x) {
    double phase = 0;
    for (int i = 0; i < n; ++i) phase += xid[i] * x[i];
    Point proj = x;
    for (int i = 0; i < n; ++i) proj[i] -= phase / rr * e0[i];
    return m + v_profile(proj) + 0.5 * delta * std::sin(2.0 * std::numbers::pi * phase / rr);
  };

  // profile checks at grid level: bounded by delta/2 and zero mean
  {
    double sup = 0;
    const int res = 64;
    double probe = torus_mean_at(
        [&](const Point& x) {
          double phase = 0;
          for (int i = 0; i < n; ++i) phase += xid[i] * x[i];
          Point proj = x;
          for (int i = 0; i < n; ++i) proj[i] -= phase / rr * e0[i];
          double val = v_profile(proj);
          sup = std::max(sup, std::abs(val));
          return val;
        },
        s, res, {});
    if (sup > 0.5 * delta + 1e-12)
      throw std::invalid_argument("nondecaying_example: profile exceeds delta/2");
    if (std::abs(probe) > 1e-6)
      throw std::invalid_argument("nondecaying_example: profile mean is not zero");
  }

  InitialData d;
  d.periodic_part = u0;
  d.period = s;
  d.perturbation = {};
  d.support_radius = 0;
  d.mean = m;
  d.mean_richardson = 0;
  d.lo = m - delta;
  d.hi = m + delta;
  return d;
}

ProblemSpec reduce_problem(const ProblemSpec& spec, double constancy_tol) {
  if (!spec.period) throw std::invalid_argument("reduce_problem: missing period structure");
  const PeriodStructure& s = *spec.period;
  if (s.constancy.empty()) return spec;  // nothing to reduce
  const int n = s.ambient_dim();
  const int d = s.torus_dim();
  if (d < 1 || d > 2) throw std::invalid_argument("reduce_problem: target dimension must be 1 or 2");

  // orthonormal basis of the complement, from the lattice generators
  std::vector<std::array<double, 3>> w;
  for (const auto& e : s.lattice.generators) {
    std::array<double, 3> v{0, 0, 0};
    for (int i = 0; i < n; ++i) v[i] = to_double(e[static_cast<std::size_t>(i)]);
    for (const auto& prev : w) {
      double c = 0;
      for (int i = 0; i < n; ++i) c += v[i] * prev[i];
      for (int i = 0; i < n; ++i) v[i] -= c * prev[i];
    }
    double norm = 0;
    for (int i = 0; i < n; ++i) norm += v[i] * v[i];
    norm = std::sqrt(norm);
    if (norm < 1e-14) throw std::invalid_argument("reduce_problem: degenerate lattice");
    for (int i = 0; i < n; ++i) v[i] /= norm;
    w.push_back(v);
  }

  // data must be constant along every declared constancy direction
  {
    const double shifts[] = {0.3, 0.7};
    const int res = 8;
    for (const auto& h : s.constancy) {
      std::array<double, 3> hd{0, 0, 0};
      double norm = 0;
      for (int i = 0; i < n; ++i) {
        hd[i] = to_double(h[static_cast<std::size_t>(i)]);
        norm += hd[i] * hd[i];
      }
      norm = std::sqrt(norm);
      for (double sc : shifts) {
        double maxdiff = 0;
        for (int q = 0; q < res * res; ++q) {
          Point x{0, 0, 0};
          for (int kdx = 0; kdx < d; ++kdx) {
            double t = -0.5 + ((q >> (3 * kdx)) % 8 + 0.5) / 8.0;
            for (int i = 0; i < n; ++i)
              x[i] += t * to_double(s.lattice.generators[static_cast<std::size_t>(kdx)][static_cast<std::size_t>(i)]);
          }
          Point xs = x;
          for (int i = 0; i < n; ++i) xs[i] += sc / norm * hd[i];
          maxdiff = std::max(maxdiff, std::abs(spec.u0(xs) - spec.u0(x)));
        }
        if (maxdiff > constancy_tol)
          throw std::invalid_argument("reduce_problem: data varies along a declared constancy direction");
      }
    }
  }

  ProblemSpec red;
  std::vector<PiecewisePoly> comps;
  for (int k = 0; k < d; ++k) {
    std::span<const double> wk(w[static_cast<std::size_t>(k)].data(), static_cast<std::size_t>(n));
    comps.push_back(directional_component(spec.flux, wk));
  }
  red.flux = FluxModel(spec.flux.u_min, spec.flux.u_max, std::move(comps));
  auto wcopy = w;
  Sampler base = spec.u0;
  const int nn = n, dd = d;
  red.u0 = [base, wcopy, nn, dd](const Point& y) {
    Point x{0, 0, 0};
    for (int k = 0; k < dd; ++k)
      for (int i = 0; i < nn; ++i) x[i] += y[k] * wcopy[static_cast<std::size_t>(k)][i];
    return base(x);
  };
  red.dim = d;
  red.scheme = spec.scheme;
  red.mean = spec.mean;

  // reduced lattice in the w-coordinates
  std::vector<RatVec> redgens;
  for (const auto& e : s.lattice.generators) {
    RatVec ge(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
      double c = 0;
      for (int i = 0; i < n; ++i) c += w[static_cast<std::size_t>(k)][i] * to_double(e[static_cast<std::size_t>(i)]);
      ge[static_cast<std::size_t>(k)] = Rat(c);
    }
    redgens.push_back(std::move(ge));
  }
  red.period = PeriodStructure(d, {}, std::move(redgens));

  // grid: drop axis-aligned constancy axes when possible, else rebuild over
  // the reduced fundamental cell with the leading spacing
  bool axis_aligned = true;
  std::array<bool, 3> dropped{false, false, false};
  for (const auto& h : s.constancy) {
    int axis = -1;
    for (int i = 0; i < n; ++i) {
      if (h[static_cast<std::size_t>(i)] != 0) {
        if (axis >= 0) {
          axis_aligned = false;
          break;
        }
        axis = i;
      }
    }
    if (axis >= 0) dropped[axis] = true;
  }
  if (axis_aligned) {
    int out_axis = 0;
    for (int a = 0; a < n; ++a) {
      if (dropped[a]) continue;
      red.cells[out_axis] = spec.cells[a];
      red.dx[out_axis] = spec.dx[a];
      red.origin[out_axis] = spec.origin[a];
      ++out_axis;
    }
  } else {
    for (int k = 0; k < d; ++k) {
      double len = 0;
      for (int i = 0; i < n; ++i) {
        double c = to_double(s.lattice.generators[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]);
        len += c * c;
      }
      len = std::sqrt(len);
      red.dx[k] = spec.dx[0];
      red.cells[k] = std::max(3, static_cast<int>(std::lround(len / spec.dx[0])));
      red.dx[k] = len / red.cells[k];
      red.origin[k] = 0;
    }
  }
  return red;
}

}  // namespace decaylab
