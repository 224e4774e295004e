#include "decaylab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace decaylab {

LatticeBasis::LatticeBasis(int n, std::vector<RatVec> gens) : ambient_dim(n), generators(std::move(gens)) {
  if (n < 1) throw std::invalid_argument("lattice ambient dimension must be >= 1");
  if (static_cast<int>(generators.size()) > n)
    throw std::invalid_argument("lattice rank exceeds ambient dimension");
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != n) throw std::invalid_argument("lattice generator has wrong length");
  }
  if (!generators.empty() && det(gram()) == 0)
    throw std::invalid_argument("degenerate lattice basis: generators are dependent");
}

RatMat LatticeBasis::gram() const {
  const std::size_t d = generators.size();
  RatMat g(d, RatVec(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g[i][j] = dot(generators[i], generators[j]);
  return g;
}

bool LatticeBasis::contains(const RatVec& x) const {
  // span-coordinates c solve Gram * c = B^T x
  const std::size_t d = generators.size();
  RatVec rhs(d);
  for (std::size_t i = 0; i < d; ++i) rhs[i] = dot(generators[i], x);
  auto c = solve_linear(gram(), rhs);
  if (!c) return false;
  // must also lie in the span: x == sum c_i e_i
  RatVec recon(x.size(), Rat(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < x.size(); ++j) recon[j] += (*c)[i] * generators[i][j];
  if (recon != x) return false;
  return std::all_of(c->begin(), c->end(), [](const Rat& q) { return is_integer(q); });
}

double LatticeBasis::cell_volume() const {
  if (generators.empty()) return 1.0;
  return std::sqrt(to_double(det(gram())));
}

LatticeBasis dual_lattice(const LatticeBasis& basis) {
  if (basis.rank() == 0) throw std::invalid_argument("dual_lattice: empty basis");
  // xi_i = sum_j (G^{-1})_{ij} e_j stays in the span and pairs to delta_ij.
  RatMat ginv = inverse(basis.gram());
  const std::size_t d = basis.generators.size();
  const std::size_t n = static_cast<std::size_t>(basis.ambient_dim);
  std::vector<RatVec> duals(d, RatVec(n, Rat(0)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < n; ++k) duals[i][k] += ginv[i][j] * basis.generators[j][k];
  return LatticeBasis(basis.ambient_dim, std::move(duals));
}

PeriodStructure::PeriodStructure(int ambient_dim, std::vector<RatVec> constancy_basis,
                                 std::vector<RatVec> lattice_generators)
    : constancy(std::move(constancy_basis)), lattice(ambient_dim, std::move(lattice_generators)) {
  for (const auto& h : constancy) {
    if (static_cast<int>(h.size()) != ambient_dim)
      throw std::invalid_argument("constancy vector has wrong length");
    for (const auto& e : lattice.generators) {
      if (dot(h, e) != 0)
        throw std::invalid_argument("lattice generator not orthogonal to constancy direction");
    }
  }
  // constancy and lattice generators together must span R^n
  RatMat all;
  for (const auto& h : constancy) all.push_back(h);
  for (const auto& e : lattice.generators) all.push_back(e);
  if (rank(all) != ambient_dim)
    throw std::invalid_argument("period structure does not span the ambient space");
  if (lattice.rank() > 0) dual = dual_lattice(lattice);
}

PeriodStructure PeriodStructure::lattice_only(std::vector<RatVec> generators) {
  if (generators.empty()) throw std::invalid_argument("lattice_only: no generators");
  int n = static_cast<int>(generators[0].size());
  return PeriodStructure(n, {}, std::move(generators));
}

PeriodStructure PeriodStructure::line(const Rat& period) {
  return PeriodStructure(1, {}, {{period}});
}

FundamentalCell fundamental_cell(const LatticeBasis& basis, int r) {
  if (r <= 0) throw std::invalid_argument("fundamental_cell: r must be a positive integer");
  FundamentalCell cell;
  const int n = basis.ambient_dim;
  cell.origin.assign(static_cast<std::size_t>(n), 0.0);
  for (const auto& g : basis.generators) {
    std::vector<double> e(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) e[static_cast<std::size_t>(k)] = r * to_double(g[static_cast<std::size_t>(k)]);
    cell.edges.push_back(std::move(e));
  }
  for (std::size_t k = 0; k < cell.edges.size(); ++k)
    for (int i = 0; i < n; ++i) cell.origin[static_cast<std::size_t>(i)] -= 0.5 * cell.edges[k][static_cast<std::size_t>(i)];
  double vol = 1.0;
  for (int k = 0; k < basis.rank(); ++k) vol *= r;
  cell.volume = vol * basis.cell_volume();
  return cell;
}

std::vector<long> cell_reduce(const LatticeBasis& basis, const RatVec& x, RatVec* reduced) {
  const std::size_t d = basis.generators.size();
  RatVec rhs(d);
  for (std::size_t i = 0; i < d; ++i) rhs[i] = dot(basis.generators[i], x);
  auto c = solve_linear(basis.gram(), rhs);
  if (!c) throw std::invalid_argument("cell_reduce: degenerate basis");
  std::vector<long> k(d);
  RatVec frac(d);
  for (std::size_t i = 0; i < d; ++i) {
    // nearest integer with half rounded down, so coordinates land in [-1/2, 1/2)
    Rat t = (*c)[i] + Rat(1, 2);
    boost::multiprecision::cpp_int fl = numerator(t) / denominator(t);
    if (t < 0 && fl * denominator(t) != numerator(t)) fl -= 1;
    k[i] = fl.convert_to<long>();
    frac[i] = (*c)[i] - Rat(fl);
  }
  if (reduced) {
    reduced->assign(x.size(), Rat(0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < x.size(); ++j) (*reduced)[j] += frac[i] * basis.generators[i][j];
  }
  return k;
}

namespace {

struct SampleGrid {
  std::vector<Point> points;
  double pitch = 0;
};

// Grid points strictly inside the window, anchored at integer multiples of
// the pitch.
SampleGrid window_samples(const Window& w, double pitch) {
  SampleGrid g;
  g.pitch = pitch;
  std::array<long, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (int a = 0; a < w.dim; ++a) {
    auto b = w.bound(a);
    lo[a] = static_cast<long>(std::floor(b[0] / pitch)) - 1;
    hi[a] = static_cast<long>(std::ceil(b[1] / pitch)) + 1;
  }
  Point x{0, 0, 0};
  for (long i = lo[0]; i <= hi[0]; ++i) {
    x[0] = i * pitch;
    for (long j = lo[1]; j <= hi[1]; ++j) {
      x[1] = w.dim > 1 ? j * pitch : 0.0;
      for (long k = lo[2]; k <= hi[2]; ++k) {
        x[2] = w.dim > 2 ? k * pitch : 0.0;
        if (w.contains(x)) g.points.push_back(x);
        if (w.dim < 3) break;
      }
      if (w.dim < 2) break;
    }
  }
  return g;
}

}  // namespace

Covering covering_count(const Window& v1, const Window& v2) {
  if (v1.dim != v2.dim) throw std::invalid_argument("covering_count: dimension mismatch");
  const int dim = v1.dim;
  const double h = v2.inradius() / 16.0;
  const double s = 4.0 * h;  // candidate pitch; s/2 < inradius(V2) guarantees feasibility
  SampleGrid samples = window_samples(v1, h);
  if (samples.points.empty()) throw std::invalid_argument("covering_count: empty window");

  // candidate translate centers on an aligned grid
  std::array<long, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (int a = 0; a < dim; ++a) {
    auto b1 = v1.bound(a);
    auto b2 = v2.bound(a);
    lo[a] = static_cast<long>(std::floor((b1[0] - b2[1]) / s)) - 1;
    hi[a] = static_cast<long>(std::ceil((b1[1] - b2[0]) / s)) + 1;
  }
  std::vector<Point> candidates;
  Point y{0, 0, 0};
  for (long i = lo[0]; i <= hi[0]; ++i) {
    y[0] = i * s;
    for (long j = lo[1]; j <= hi[1]; ++j) {
      y[1] = dim > 1 ? j * s : 0.0;
      for (long k = lo[2]; k <= hi[2]; ++k) {
        y[2] = dim > 2 ? k * s : 0.0;
        candidates.push_back(y);
        if (dim < 3) break;
      }
      if (dim < 2) break;
    }
  }

  auto covers = [&](const Point& c, const Point& x) {
    Point rel{x[0] - c[0], x[1] - c[1], x[2] - c[2]};
    return v2.contains(rel);
  };

  // greedy set cover; ties broken by distance to the aligned placement, then
  // by scan order
  Point ideal{};
  for (int a = 0; a < dim; ++a) ideal[a] = v1.center[a] - v2.center[a];
  std::vector<bool> covered(samples.points.size(), false);
  std::size_t remaining = samples.points.size();
  Covering out;
  out.sample_pitch = h;
  while (remaining > 0) {
    std::size_t best = candidates.size();
    std::size_t best_count = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      std::size_t cnt = 0;
      for (std::size_t si = 0; si < samples.points.size(); ++si) {
        if (!covered[si] && covers(candidates[ci], samples.points[si])) ++cnt;
      }
      if (cnt == 0) continue;
      double d2 = 0;
      for (int a = 0; a < dim; ++a) {
        double dd = candidates[ci][a] - ideal[a];
        d2 += dd * dd;
      }
      if (cnt > best_count || (cnt == best_count && d2 < best_dist - 1e-15)) {
        best = ci;
        best_count = cnt;
        best_dist = d2;
      }
    }
    if (best == candidates.size())
      throw std::runtime_error("covering_count: greedy cover failed to progress");
    out.centers.push_back(candidates[best]);
    for (std::size_t si = 0; si < samples.points.size(); ++si) {
      if (!covered[si] && covers(candidates[best], samples.points[si])) {
        covered[si] = true;
        --remaining;
      }
    }
  }
  // certificate check
  for (std::size_t si = 0; si < samples.points.size(); ++si) {
    bool ok = false;
    for (const auto& c : out.centers) ok = ok || covers(c, samples.points[si]);
    if (!ok) throw std::runtime_error("covering_count: certificate verification failed");
  }
  out.count = static_cast<int>(out.centers.size());
  return out;
}

namespace {

// Midpoint sampling points of the r=1 fundamental cell in lattice
// coordinates; calls fn(point).
template <typename F>
void for_each_cell_sample(const PeriodStructure& s, int resolution, const RatVec& origin, F&& fn) {
  const int d = s.torus_dim();
  const int n = s.ambient_dim();
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  const long total = static_cast<long>(std::pow(static_cast<double>(resolution), d) + 0.5);
  for (long flat = 0; flat < total; ++flat) {
    long rem = flat;
    for (int k = 0; k < d; ++k) {
      idx[static_cast<std::size_t>(k)] = static_cast<int>(rem % resolution);
      rem /= resolution;
    }
    Point x{0, 0, 0};
    for (int k = 0; k < d; ++k) {
      double t = -0.5 + (idx[static_cast<std::size_t>(k)] + 0.5) / resolution;
      for (int i = 0; i < n; ++i)
        x[i] += t * to_double(s.lattice.generators[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]);
    }
    if (!origin.empty()) {
      for (int i = 0; i < n; ++i) x[i] += to_double(origin[static_cast<std::size_t>(i)]);
    }
    fn(x);
  }
}

double mean_over_cell(const Sampler& p, const PeriodStructure& s, int resolution, const RatVec& origin) {
  double sum = 0;
  long count = 0;
  for_each_cell_sample(s, resolution, origin, [&](const Point& x) {
    sum += p(x);
    ++count;
  });
  return sum / static_cast<double>(count);
}

}  // namespace

PeriodReport validate_periods(const Sampler& p, const PeriodStructure& s, double tol, int resolution) {
  PeriodReport rep;
  rep.tol = tol;
  const int n = s.ambient_dim();
  const double cellvol = s.lattice.cell_volume();
  for (std::size_t gi = 0; gi < s.lattice.generators.size(); ++gi) {
    const auto& e = s.lattice.generators[gi];
    double acc = 0;
    long count = 0;
    for_each_cell_sample(s, resolution, {}, [&](const Point& x) {
      Point xe = x;
      for (int i = 0; i < n; ++i) xe[i] += to_double(e[static_cast<std::size_t>(i)]);
      acc += std::abs(p(xe) - p(x));
      ++count;
    });
    PeriodReport::Entry entry;
    entry.label = "generator " + std::to_string(gi);
    entry.discrepancy = cellvol * acc / static_cast<double>(count);
    rep.entries.push_back(entry);
  }
  const double shifts[] = {0.25, 0.5, 1.0};
  for (std::size_t hi = 0; hi < s.constancy.size(); ++hi) {
    const auto& hvec = s.constancy[hi];
    double norm = 0;
    for (int i = 0; i < n; ++i) {
      double c = to_double(hvec[static_cast<std::size_t>(i)]);
      norm += c * c;
    }
    norm = std::sqrt(norm);
    for (double sc : shifts) {
      double acc = 0;
      long count = 0;
      for_each_cell_sample(s, resolution, {}, [&](const Point& x) {
        Point xh = x;
        for (int i = 0; i < n; ++i) xh[i] += sc / norm * to_double(hvec[static_cast<std::size_t>(i)]);
        acc += std::abs(p(xh) - p(x));
        ++count;
      });
      PeriodReport::Entry entry;
      entry.label = "constancy " + std::to_string(hi) + " shift " + std::to_string(sc);
      entry.discrepancy = cellvol * acc / static_cast<double>(count);
      rep.entries.push_back(entry);
    }
  }
  for (const auto& e : rep.entries) rep.max_discrepancy = std::max(rep.max_discrepancy, e.discrepancy);
  rep.pass = rep.max_discrepancy <= tol;
  return rep;
}

MeanResult torus_mean(const Sampler& p, const PeriodStructure& s, int resolution, double period_tol) {
  if (resolution < 1) throw std::invalid_argument("torus_mean: resolution must be >= 1");
  auto rep = validate_periods(p, s, period_tol, std::min(resolution, 64));
  if (!rep.pass)
    throw std::invalid_argument("torus_mean: sampler is not periodic within tolerance, max violation " +
                                std::to_string(rep.max_discrepancy));
  MeanResult res;
  res.mean = mean_over_cell(p, s, resolution, {});
  int coarse = std::max(1, resolution / 2);
  res.richardson = std::abs(res.mean - mean_over_cell(p, s, coarse, {}));
  return res;
}

double torus_mean_at(const Sampler& p, const PeriodStructure& s, int resolution, const RatVec& origin) {
  return mean_over_cell(p, s, resolution, origin);
}

}  // namespace decaylab
