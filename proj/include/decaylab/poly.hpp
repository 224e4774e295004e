#pragma once

#include "decaylab/rational.hpp"

#include <utility>
#include <vector>

namespace decaylab {

/// Dense polynomial with exact rational coefficients, c[k] * u^k.
struct Poly {
  RatVec c;

  Poly() = default;
  explicit Poly(RatVec coeffs) : c(std::move(coeffs)) { trim(); }
  static Poly constant(const Rat& v) { return Poly(RatVec{v}); }

  int degree() const { return c.empty() ? -1 : static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  Rat eval(const Rat& u) const;
  double eval(double u) const;
  Poly deriv() const;
  Poly antideriv() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly scaled(const Rat& f) const;
};

/// Continuous piecewise polynomial on [breaks.front(), breaks.back()];
/// piece i lives on [breaks[i], breaks[i+1]].
struct PiecewisePoly {
  std::vector<Rat> breaks;
  std::vector<Poly> pieces;

  PiecewisePoly() = default;
  PiecewisePoly(std::vector<Rat> brks, std::vector<Poly> pcs);

  /// Single piece over [lo, hi].
  static PiecewisePoly single(const Rat& lo, const Rat& hi, Poly p);

  int piece_count() const { return static_cast<int>(pieces.size()); }
  Rat lo() const { return breaks.front(); }
  Rat hi() const { return breaks.back(); }

  double eval(double u) const;
  Rat eval_exact(const Rat& u) const;

  /// sup of |f'| over [a, b] (exact critical-point search, degree <= 3).
  double deriv_bound(double a, double b) const;

  /// Exact min/max of f over [a, b].
  std::pair<double, double> range_on(double a, double b) const;

  /// Re-expresses this function on a refined breakpoint set covering the same
  /// interval. `extra` must lie inside [lo, hi].
  PiecewisePoly refined(const std::vector<Rat>& extra) const;

  /// Pointwise linear combination sum_i w_i f_i; domains must agree.
  static PiecewisePoly combine(const std::vector<const PiecewisePoly*>& fs, const RatVec& weights);

  /// Validates continuity across interior breakpoints (exact).
  bool continuous() const;

  /// Largest denominator bit-size among coefficients and breakpoints; used to
  /// decide between the exact and the floating analysis paths.
  unsigned max_denominator_bits() const;
};

/// Compiled double-precision evaluator for solver hot loops.
struct CompiledPiecewise {
  std::vector<double> breaks;
  std::vector<std::array<double, 4>> coeff;  // up to cubic

  static CompiledPiecewise from(const PiecewisePoly& f);
  double eval(double u) const;
};

}  // namespace decaylab
