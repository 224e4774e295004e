#pragma once

#include "decaylab/geometry.hpp"
#include "decaylab/rational.hpp"

#include <string>
#include <vector>

namespace decaylab {

/// Basis of a rank-d lattice in R^n, with exact rational generator
/// coordinates. Generators must be linearly independent.
struct LatticeBasis {
  int ambient_dim = 1;
  std::vector<RatVec> generators;  // d vectors of length ambient_dim

  LatticeBasis() = default;
  LatticeBasis(int n, std::vector<RatVec> gens);

  int rank() const { return static_cast<int>(generators.size()); }

  /// Gram matrix of the generators.
  RatMat gram() const;

  /// Exact membership test: x in the lattice iff its span-coordinates are
  /// integers. Points outside the span are not members.
  bool contains(const RatVec& x) const;

  /// d-dimensional volume of the fundamental parallelepiped (sqrt of the
  /// Gram determinant), as a double.
  double cell_volume() const;
};

/// Period structure of a periodic function: the constancy subspace H, the
/// lattice L0 in the orthogonal complement and the cached dual lattice.
struct PeriodStructure {
  std::vector<RatVec> constancy;  // basis of H, possibly empty
  LatticeBasis lattice;           // L0, lies in the orthogonal complement of H
  LatticeBasis dual;              // derived, cached

  PeriodStructure() = default;
  PeriodStructure(int ambient_dim, std::vector<RatVec> constancy_basis, std::vector<RatVec> lattice_generators);

  int ambient_dim() const { return lattice.ambient_dim; }
  int torus_dim() const { return lattice.rank(); }

  static PeriodStructure lattice_only(std::vector<RatVec> generators);
  /// 1D structure with a single period.
  static PeriodStructure line(const Rat& period);
};

/// Half-open fundamental parallelepiped of the lattice r*L, centered at the
/// origin: { sum t_k (r e_k) : -1/2 <= t_k < 1/2 }.
struct FundamentalCell {
  std::vector<double> origin;
  std::vector<std::vector<double>> edges;  // r * generators
  double volume = 0;
};

LatticeBasis dual_lattice(const LatticeBasis& basis);

FundamentalCell fundamental_cell(const LatticeBasis& basis, int r);

/// Reduces x modulo the lattice into the centered fundamental cell; returns
/// the integer translate indices. x must lie in the lattice span.
std::vector<long> cell_reduce(const LatticeBasis& basis, const RatVec& x, RatVec* reduced = nullptr);

/// Finite covering of closure(V1) by translates of V2 at grid resolution:
/// deterministic greedy cover over an aligned candidate grid, verified on a
/// fine sample of V1.
struct Covering {
  int count = 0;
  std::vector<Point> centers;
  double sample_pitch = 0;
};

Covering covering_count(const Window& v1, const Window& v2);

/// Per-direction grid-L1 periodicity discrepancies of a sampler.
struct PeriodReport {
  struct Entry {
    std::string label;
    double discrepancy = 0;
  };
  std::vector<Entry> entries;
  double tol = 0;
  bool pass = true;
  double max_discrepancy = 0;
};

PeriodReport validate_periods(const Sampler& p, const PeriodStructure& s, double tol, int resolution = 64);

/// Normalized mean of an S-periodic sampler over one fundamental cell of L0.
struct MeanResult {
  double mean = 0;
  double richardson = 0;  // |mean(N) - mean(N/2)|
};

MeanResult torus_mean(const Sampler& p, const PeriodStructure& s, int resolution, double period_tol = 1e-9);

/// Same quadrature with the sampling origin shifted; used by invariance tests.
double torus_mean_at(const Sampler& p, const PeriodStructure& s, int resolution, const RatVec& origin);

}  // namespace decaylab
