#include "decaylab/poly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <set>
#include <stdexcept>

namespace decaylab {

Rat Poly::eval(const Rat& u) const {
  Rat acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * u + c[k];
  return acc;
}

double Poly::eval(double u) const {
  double acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * u + to_double(c[k]);
  return acc;
}

Poly Poly::deriv() const {
  if (c.size() <= 1) return Poly();
  RatVec d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * Rat(static_cast<int>(k));
  return Poly(std::move(d));
}

Poly Poly::antideriv() const {
  RatVec a(c.size() + 1, Rat(0));
  for (std::size_t k = 0; k < c.size(); ++k) a[k + 1] = c[k] / Rat(static_cast<int>(k + 1));
  return Poly(std::move(a));
}

Poly Poly::operator+(const Poly& o) const {
  RatVec r(std::max(c.size(), o.c.size()), Rat(0));
  for (std::size_t k = 0; k < c.size(); ++k) r[k] += c[k];
  for (std::size_t k = 0; k < o.c.size(); ++k) r[k] += o.c[k];
  return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
  RatVec r(std::max(c.size(), o.c.size()), Rat(0));
  for (std::size_t k = 0; k < c.size(); ++k) r[k] += c[k];
  for (std::size_t k = 0; k < o.c.size(); ++k) r[k] -= o.c[k];
  return Poly(std::move(r));
}

Poly Poly::scaled(const Rat& f) const {
  RatVec r = c;
  for (auto& v : r) v *= f;
  return Poly(std::move(r));
}

PiecewisePoly::PiecewisePoly(std::vector<Rat> brks, std::vector<Poly> pcs)
    : breaks(std::move(brks)), pieces(std::move(pcs)) {
  if (breaks.size() != pieces.size() + 1 || pieces.empty())
    throw std::invalid_argument("piecewise polynomial: breakpoint/piece count mismatch");
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1]))
      throw std::invalid_argument("piecewise polynomial: breakpoints not strictly increasing");
  }
  for (const auto& p : pieces) {
    if (p.degree() > 3) throw std::invalid_argument("piecewise polynomial: degree above 3");
  }
  if (!continuous()) throw std::invalid_argument("piecewise polynomial: discontinuous at a breakpoint");
}

PiecewisePoly PiecewisePoly::single(const Rat& lo, const Rat& hi, Poly p) {
  return PiecewisePoly({lo, hi}, {std::move(p)});
}

bool PiecewisePoly::continuous() const {
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    if (pieces[i].eval(breaks[i + 1]) != pieces[i + 1].eval(breaks[i + 1])) return false;
  }
  return true;
}

namespace {

std::size_t find_piece(const std::vector<Rat>& breaks, double u) {
  // clamp outside the domain; piece i covers [breaks[i], breaks[i+1])
  if (u <= to_double(breaks.front())) return 0;
  std::size_t n = breaks.size() - 1;
  if (u >= to_double(breaks.back())) return n - 1;
  std::size_t lo = 0, hi = n - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (u >= to_double(breaks[mid]))
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace

double PiecewisePoly::eval(double u) const { return pieces[find_piece(breaks, u)].eval(u); }

Rat PiecewisePoly::eval_exact(const Rat& u) const {
  std::size_t i = 0;
  while (i + 1 < pieces.size() && u >= breaks[i + 1]) ++i;
  return pieces[i].eval(u);
}

namespace {

// real roots of an exact polynomial of degree <= 2, as doubles
void quadratic_roots(const Poly& p, std::vector<double>& out) {
  if (p.degree() <= 0) return;
  if (p.degree() == 1) {
    out.push_back(-to_double(p.c[0]) / to_double(p.c[1]));
    return;
  }
  double a = to_double(p.c[2]), b = to_double(p.c[1]), c = to_double(p.c[0]);
  double disc = b * b - 4 * a * c;
  if (disc < 0) return;
  double sq = std::sqrt(disc);
  out.push_back((-b - sq) / (2 * a));
  out.push_back((-b + sq) / (2 * a));
}

}  // namespace

double PiecewisePoly::deriv_bound(double a, double b) const {
  if (a > b) std::swap(a, b);
  double bound = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    double plo = std::max(a, to_double(breaks[i]));
    double phi = std::min(b, to_double(breaks[i + 1]));
    if (plo > phi) continue;
    Poly d = pieces[i].deriv();
    std::vector<double> cand{plo, phi};
    quadratic_roots(d.deriv(), cand);  // critical points of the derivative
    for (double u : cand) {
      if (u < plo || u > phi) continue;
      bound = std::max(bound, std::abs(d.eval(u)));
    }
  }
  return bound;
}

std::pair<double, double> PiecewisePoly::range_on(double a, double b) const {
  if (a > b) std::swap(a, b);
  double mn = std::numeric_limits<double>::infinity();
  double mx = -mn;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    double plo = std::max(a, to_double(breaks[i]));
    double phi = std::min(b, to_double(breaks[i + 1]));
    if (plo > phi) continue;
    std::vector<double> cand{plo, phi};
    quadratic_roots(pieces[i].deriv(), cand);
    for (double u : cand) {
      if (u < plo || u > phi) continue;
      double v = pieces[i].eval(u);
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
  }
  if (!(mn <= mx)) {
    // degenerate query outside the domain: clamp
    double v = eval(a);
    return {v, v};
  }
  return {mn, mx};
}

PiecewisePoly PiecewisePoly::refined(const std::vector<Rat>& extra) const {
  std::set<Rat> all(breaks.begin(), breaks.end());
  for (const auto& x : extra) {
    if (x > lo() && x < hi()) all.insert(x);
  }
  std::vector<Rat> nb(all.begin(), all.end());
  std::vector<Poly> np;
  for (std::size_t i = 0; i + 1 < nb.size(); ++i) {
    Rat mid = (nb[i] + nb[i + 1]) / 2;
    std::size_t src = 0;
    while (src + 1 < pieces.size() && mid >= breaks[src + 1]) ++src;
    np.push_back(pieces[src]);
  }
  return PiecewisePoly(std::move(nb), std::move(np));
}

PiecewisePoly PiecewisePoly::combine(const std::vector<const PiecewisePoly*>& fs, const RatVec& weights) {
  if (fs.empty() || fs.size() != weights.size())
    throw std::invalid_argument("combine: component/weight mismatch");
  std::set<Rat> all;
  for (const auto* f : fs) {
    if (f->lo() != fs[0]->lo() || f->hi() != fs[0]->hi())
      throw std::invalid_argument("combine: domains differ");
    all.insert(f->breaks.begin(), f->breaks.end());
  }
  std::vector<Rat> nb(all.begin(), all.end());
  std::vector<Poly> np;
  for (std::size_t i = 0; i + 1 < nb.size(); ++i) {
    Rat mid = (nb[i] + nb[i + 1]) / 2;
    Poly acc;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      std::size_t src = 0;
      const auto& f = *fs[k];
      while (src + 1 < f.pieces.size() && mid >= f.breaks[src + 1]) ++src;
      acc = acc + f.pieces[src].scaled(weights[k]);
    }
    np.push_back(std::move(acc));
  }
  return PiecewisePoly(std::move(nb), std::move(np));
}

unsigned PiecewisePoly::max_denominator_bits() const {
  unsigned bits = 0;
  auto upd = [&](const Rat& q) {
    bits = std::max(bits, static_cast<unsigned>(msb(denominator(q)) + 1));
  };
  for (const auto& b : breaks) upd(b);
  for (const auto& p : pieces)
    for (const auto& cc : p.c) upd(cc);
  return bits;
}

CompiledPiecewise CompiledPiecewise::from(const PiecewisePoly& f) {
  CompiledPiecewise out;
  out.breaks.reserve(f.breaks.size());
  for (const auto& b : f.breaks) out.breaks.push_back(to_double(b));
  for (const auto& p : f.pieces) {
    std::array<double, 4> c{0, 0, 0, 0};
    for (std::size_t k = 0; k < p.c.size() && k < 4; ++k) c[k] = to_double(p.c[k]);
    out.coeff.push_back(c);
  }
  return out;
}

double CompiledPiecewise::eval(double u) const {
  std::size_t n = coeff.size();
  std::size_t i = 0;
  if (n > 1) {
    if (u >= breaks[n - 1]) {
      i = n - 1;
    } else {
      while (i + 1 < n && u >= breaks[i + 1]) ++i;
    }
  }
  const auto& c = coeff[i];
  return ((c[3] * u + c[2]) * u + c[1]) * u + c[0];
}

}  // namespace decaylab
