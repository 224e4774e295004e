#include "decaylab/norms.hpp"

#include "decaylab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace decaylab {

namespace {

// 1D overlap of [a0, a1] with [b0, b1]
double overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

// antiderivative of sqrt(R^2 - x^2)
double circ_F(double x, double r) {
  x = std::clamp(x, -r, r);
  return 0.5 * (x * std::sqrt(std::max(0.0, r * r - x * x)) + r * r * std::asin(x / r));
}

// area of the disk |p| < R intersected with [x0,x1] x [y0,y1]
double disk_rect_area(double r, double x0, double x1, double y0, double y1) {
  x0 = std::clamp(x0, -r, r);
  x1 = std::clamp(x1, -r, r);
  if (x0 >= x1) return 0.0;
  std::vector<double> cuts{x0, x1};
  auto add_cut = [&](double v) {
    if (v > x0 && v < x1) cuts.push_back(v);
  };
  for (double y : {y0, y1}) {
    if (std::abs(y) < r) {
      double xr = std::sqrt(r * r - y * y);
      add_cut(-xr);
      add_cut(xr);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double area = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1];
    double mid = 0.5 * (a + b);
    double f = std::sqrt(std::max(0.0, r * r - mid * mid));
    double upper_is_f = f < y1 ? 1.0 : 0.0;    // column top: min(y1, f)
    double lower_is_f = -f > y0 ? 1.0 : 0.0;   // column bottom: max(y0, -f)
    double top_mid = std::min(y1, f), bot_mid = std::max(y0, -f);
    if (top_mid <= bot_mid) continue;
    double seg = 0;
    // integrate (top - bottom) dx over [a, b] by the active closed form
    if (upper_is_f > 0.5)
      seg += circ_F(b, r) - circ_F(a, r);
    else
      seg += y1 * (b - a);
    if (lower_is_f > 0.5)
      seg += circ_F(b, r) - circ_F(a, r);
    else
      seg -= y0 * (b - a);
    area += seg;
  }
  return area;
}

}  // namespace

WindowStencil WindowStencil::build(const Window& w, const GridField& grid) {
  if (w.dim != grid.dim) throw std::invalid_argument("window/grid dimension mismatch");
  WindowStencil st;
  std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (int a = 0; a < w.dim; ++a) {
    auto b = w.bound(a);
    lo[a] = static_cast<int>(std::floor(b[0] / grid.dx[a])) - 1;
    hi[a] = static_cast<int>(std::ceil(b[1] / grid.dx[a])) + 1;
  }
  const double hx = grid.dx[0], hy = grid.dx[1], hz = grid.dx[2];
  for (int ok = lo[2]; ok <= hi[2]; ++ok)
    for (int oj = lo[1]; oj <= hi[1]; ++oj)
      for (int oi = lo[0]; oi <= hi[0]; ++oi) {
        double wgt = 0;
        if (w.shape == Window::Shape::Box) {
          wgt = overlap(oi * hx - hx / 2, oi * hx + hx / 2, w.center[0] - w.half[0], w.center[0] + w.half[0]);
          if (w.dim > 1)
            wgt *= overlap(oj * hy - hy / 2, oj * hy + hy / 2, w.center[1] - w.half[1], w.center[1] + w.half[1]);
          if (w.dim > 2)
            wgt *= overlap(ok * hz - hz / 2, ok * hz + hz / 2, w.center[2] - w.half[2], w.center[2] + w.half[2]);
        } else if (w.dim == 1) {
          wgt = overlap(oi * hx - hx / 2, oi * hx + hx / 2, w.center[0] - w.radius, w.center[0] + w.radius);
        } else if (w.dim == 2) {
          wgt = disk_rect_area(w.radius, oi * hx - hx / 2 - w.center[0], oi * hx + hx / 2 - w.center[0],
                               oj * hy - hy / 2 - w.center[1], oj * hy + hy / 2 - w.center[1]);
        } else {
          // 3D ball: full cells exactly, boundary cells by 4^3 subsampling
          double cx = oi * hx - w.center[0], cy = oj * hy - w.center[1], cz = ok * hz - w.center[2];
          double rad_out = std::sqrt(cx * cx + cy * cy + cz * cz) -
                           0.5 * std::sqrt(hx * hx + hy * hy + hz * hz);
          double rad_in = std::sqrt(cx * cx + cy * cy + cz * cz) +
                          0.5 * std::sqrt(hx * hx + hy * hy + hz * hz);
          if (rad_in < w.radius) {
            wgt = hx * hy * hz;
          } else if (rad_out < w.radius) {
            int inside = 0;
            for (int sz = 0; sz < 4; ++sz)
              for (int sy = 0; sy < 4; ++sy)
                for (int sx = 0; sx < 4; ++sx) {
                  double px = cx + (sx + 0.5) / 4.0 * hx - hx / 2;
                  double py = cy + (sy + 0.5) / 4.0 * hy - hy / 2;
                  double pz = cz + (sz + 0.5) / 4.0 * hz - hz / 2;
                  if (px * px + py * py + pz * pz < w.radius * w.radius) ++inside;
                }
            wgt = hx * hy * hz * inside / 64.0;
          }
        }
        if (wgt > 0) {
          st.offsets.push_back({oi, oj, ok});
          st.weights.push_back(wgt);
          st.weight_sum += wgt;
        }
      }
  if (w.shape == Window::Shape::Ball) {
    if (w.dim == 1) st.surface = 2.0;
    if (w.dim == 2) st.surface = 2.0 * std::numbers::pi * w.radius;
    if (w.dim == 3) st.surface = 4.0 * std::numbers::pi * w.radius * w.radius;
  } else {
    if (w.dim == 1) st.surface = 2.0;
    if (w.dim == 2) st.surface = 4.0 * (w.half[0] + w.half[1]);
    if (w.dim == 3)
      st.surface = 8.0 * (w.half[0] * w.half[1] + w.half[0] * w.half[2] + w.half[1] * w.half[2]);
  }
  return st;
}

NormResult v_norm(const GridField& u, const Window& v, double m_shift) {
  for (int a = 0; a < u.dim; ++a) {
    if (u.dx[a] > v.inradius() / 4.0 + 1e-15)
      throw std::invalid_argument("v_norm: grid spacing does not resolve the window");
  }
  WindowStencil st = WindowStencil::build(v, u);
  const int nx = u.cells[0], ny = u.cells[1], nz = u.cells[2];
  const std::size_t ncells = u.size();
  const std::size_t nchunks = (ncells + kChunk - 1) / kChunk;
  std::vector<double> chunk_max(nchunks, 0.0);
  parallel_chunks(ncells, [&](std::size_t lo, std::size_t hi) {
    double mx = 0;
    for (std::size_t c = lo; c < hi; ++c) {
      int ci = static_cast<int>(c % static_cast<std::size_t>(nx));
      int cj = static_cast<int>((c / static_cast<std::size_t>(nx)) % static_cast<std::size_t>(ny));
      int ck = static_cast<int>(c / (static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)));
      double s = 0;
      for (std::size_t t = 0; t < st.offsets.size(); ++t) {
        const auto& o = st.offsets[t];
        int i = ci + o[0];
        i -= nx * static_cast<int>(std::floor(static_cast<double>(i) / nx));
        int j = cj + o[1];
        j -= ny * static_cast<int>(std::floor(static_cast<double>(j) / ny));
        int k = ck + o[2];
        k -= nz * static_cast<int>(std::floor(static_cast<double>(k) / nz));
        s += st.weights[t] * std::abs(u.at(i, j, k) - m_shift);
      }
      mx = std::max(mx, s);
    }
    chunk_max[lo / kChunk] = mx;
  });
  NormResult res;
  for (double m : chunk_max) res.value = std::max(res.value, m);
  double sup = std::max(std::abs(u.min_value() - m_shift), std::abs(u.max_value() - m_shift));
  double diag = 0;
  for (int a = 0; a < u.dim; ++a) diag += u.dx[a] * u.dx[a];
  res.center_defect_bound = st.surface * sup * 0.5 * std::sqrt(diag);
  return res;
}

NormResult x_norm(const GridField& u, double m_shift) { return v_norm(u, Window::ball(u.dim, 1.0), m_shift); }

int norm_equivalence_bound(const Window& v1, const Window& v2) { return covering_count(v1, v2).count; }

double torus_l1_distance(const GridField& u, double c, const PeriodStructure& s, double tol) {
  if (s.ambient_dim() != u.dim) throw std::invalid_argument("torus_l1_distance: dimension mismatch");
  const double scale = std::max({1.0, std::abs(u.min_value()), std::abs(u.max_value())});
  for (const auto& e : s.lattice.generators) {
    std::array<int, 3> shift{0, 0, 0};
    for (int a = 0; a < u.dim; ++a) {
      double comp = to_double(e[static_cast<std::size_t>(a)]);
      double cellshift = comp / u.dx[a];
      long rounded = std::lround(cellshift);
      if (std::abs(cellshift - static_cast<double>(rounded)) > 1e-9)
        throw std::invalid_argument("torus_l1_distance: lattice vector is not grid aligned");
      shift[a] = static_cast<int>(rounded);
    }
    for (int k = 0; k < u.cells[2]; ++k)
      for (int j = 0; j < u.cells[1]; ++j)
        for (int i = 0; i < u.cells[0]; ++i) {
          double ref = u.at(u.wrap(0, i + shift[0]), u.wrap(1, j + shift[1]), u.wrap(2, k + shift[2]));
          if (std::abs(ref - u.at(i, j, k)) > tol * scale)
            throw std::invalid_argument("torus_l1_distance: field is not periodic on the grid");
        }
  }
  // normalized measure: plain cell average over the (validated) periodic grid
  std::vector<double> diff(u.data.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = std::abs(u.data[i] - c);
  return tree_sum(diff) / static_cast<double>(diff.size());
}

DecayReport decay_report(const Trajectory& traj, double m, const PeriodStructure* s, double decay_threshold) {
  if (traj.states.empty()) throw std::invalid_argument("decay_report: empty trajectory");
  DecayReport rep;
  rep.decay_threshold = decay_threshold;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const GridField& u = traj.states[i];
    rep.times.push_back(traj.times[i]);
    rep.x_norm.push_back(x_norm(u, m).value);
    if (s) rep.torus_l1.push_back(torus_l1_distance(u, m, *s));
    rep.mass.push_back(total_mass(u));
    rep.min_value.push_back(u.min_value());
    rep.max_value.push_back(u.max_value());
  }
  if (rep.x_norm.back() <= decay_threshold) {
    rep.verdict = "decayed";
  } else if (rep.x_norm.size() >= 3) {
    double a = rep.x_norm[rep.x_norm.size() - 3];
    double b = rep.x_norm[rep.x_norm.size() - 2];
    double c = rep.x_norm.back();
    double mx = std::max({a, b, c}), mn = std::min({a, b, c});
    rep.verdict = (mx - mn) < 0.01 * std::max(mx, 1e-300) ? "stalled" : "transient";
  } else {
    rep.verdict = "transient";
  }
  return rep;
}

std::string DecayReport::to_csv() const {
  std::string out = "t,x_norm,torus_l1,mass,min,max\n";
  char buf[64];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return std::string(buf);
  };
  for (std::size_t i = 0; i < times.size(); ++i) {
    out += fmt(times[i]) + "," + fmt(x_norm[i]) + ",";
    out += (torus_l1.empty() ? std::string("") : fmt(torus_l1[i])) + ",";
    out += fmt(mass[i]) + "," + fmt(min_value[i]) + "," + fmt(max_value[i]) + "\n";
  }
  return out;
}

std::vector<double> slice_means(const GridField& u, int axis) {
  if (axis < 0 || axis >= u.dim) throw std::invalid_argument("slice_means: bad axis");
  std::vector<double> means(static_cast<std::size_t>(u.cells[axis]), 0.0);
  long per_slice = 1;
  for (int a = 0; a < u.dim; ++a)
    if (a != axis) per_slice *= u.cells[a];
  for (int k = 0; k < u.cells[2]; ++k)
    for (int j = 0; j < u.cells[1]; ++j)
      for (int i = 0; i < u.cells[0]; ++i) {
        int idx[3] = {i, j, k};
        means[static_cast<std::size_t>(idx[axis])] += u.at(i, j, k);
      }
  for (auto& v : means) v /= static_cast<double>(per_slice);
  return means;
}

}  // namespace decaylab
