#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "decaylab/lattice.hpp"

#include <cmath>
#include <random>

using namespace decaylab;

namespace {

Sampler square_wave_2periodic() {
  return [](const Point& x) {
    double r = x[0] - 2.0 * std::floor(x[0] / 2.0);
    return r < 1.0 ? 1.0 : -1.0;
  };
}

LatticeBasis random_rational_basis(std::mt19937& rng, int n, int d) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  for (;;) {
    std::vector<RatVec> gens;
    for (int k = 0; k < d; ++k) {
      RatVec g;
      for (int i = 0; i < n; ++i) g.emplace_back(num(rng), den(rng));
      gens.push_back(std::move(g));
    }
    try {
      return LatticeBasis(n, std::move(gens));
    } catch (const std::invalid_argument&) {
      continue;  // dependent draw
    }
  }
}

}  // namespace

TEST_CASE("dual lattice on the worked examples") {
  // identity basis is self-dual
  LatticeBasis id(2, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
  auto dual_id = dual_lattice(id);
  CHECK(dual_id.generators == id.generators);

  // diagonal inversion
  LatticeBasis diag(2, {{Rat(2), Rat(0)}, {Rat(0), Rat(3)}});
  auto dd = dual_lattice(diag);
  CHECK(dd.generators[0] == RatVec{Rat(1, 2), Rat(0)});
  CHECK(dd.generators[1] == RatVec{Rat(0), Rat(1, 3)});

  // sheared basis: solve xi_i . e_j = delta_ij
  LatticeBasis shear(2, {{Rat(1), Rat(1)}, {Rat(0), Rat(1)}});
  auto ds = dual_lattice(shear);
  CHECK(ds.generators[0] == RatVec{Rat(1), Rat(0)});
  CHECK(ds.generators[1] == RatVec{Rat(-1), Rat(1)});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(dot(ds.generators[i], shear.generators[j]) == (i == j ? Rat(1) : Rat(0)));
}

TEST_CASE("dual round trip and pairing integrality on random rational lattices") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + static_cast<int>(rng() % 3);
    int d = 1 + static_cast<int>(rng() % n);
    auto basis = random_rational_basis(rng, n, d);
    auto dual = dual_lattice(basis);
    // exact pairing
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        CHECK(dot(dual.generators[i], basis.generators[j]) == (i == j ? Rat(1) : Rat(0)));
    // round trip generates the same lattice: integer change of basis with unit determinant
    auto ddual = dual_lattice(dual);
    RatMat change(d, RatVec(d));
    for (int c = 0; c < d; ++c) {
      RatVec rhs(d);
      for (int i = 0; i < d; ++i) rhs[i] = dot(basis.generators[i], ddual.generators[c]);
      auto sol = solve_linear(basis.gram(), rhs);
      REQUIRE(sol.has_value());
      for (int i = 0; i < d; ++i) change[i][c] = (*sol)[i];
    }
    for (const auto& row : change)
      for (const auto& q : row) CHECK(is_integer(q));
    Rat dt = det(change);
    CHECK((dt == 1 || dt == -1));
  }
}

TEST_CASE("period structure invariants") {
  // constancy direction orthogonal to the lattice
  PeriodStructure s(2, {{Rat(0), Rat(1)}}, {{Rat(1), Rat(0)}});
  CHECK(s.torus_dim() == 1);
  CHECK(s.dual.generators[0] == RatVec{Rat(1), Rat(0)});

  CHECK_THROWS_AS(PeriodStructure(2, {{Rat(1), Rat(1)}}, {{Rat(1), Rat(0)}}), std::invalid_argument);
  // lattice alone must span with the constancy directions
  CHECK_THROWS_AS(PeriodStructure(2, {}, {{Rat(1), Rat(0)}}), std::invalid_argument);
  CHECK_THROWS_AS(LatticeBasis(2, {{Rat(1), Rat(1)}, {Rat(2), Rat(2)}}), std::invalid_argument);
}

TEST_CASE("fundamental cell") {
  LatticeBasis z1(1, {{Rat(1)}});
  auto c1 = fundamental_cell(z1, 1);
  CHECK(c1.origin[0] == doctest::Approx(-0.5));
  CHECK(c1.volume == doctest::Approx(1.0));
  auto c4 = fundamental_cell(z1, 4);
  CHECK(c4.origin[0] == doctest::Approx(-2.0));
  CHECK(c4.volume == doctest::Approx(4.0));

  LatticeBasis diag(2, {{Rat(2), Rat(0)}, {Rat(0), Rat(3)}});
  CHECK(fundamental_cell(diag, 2).volume == doctest::Approx(24.0));
  CHECK_THROWS_AS(fundamental_cell(z1, 0), std::invalid_argument);
}

TEST_CASE("tiling: cell reduction is idempotent and lands in the cell") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-40, 40);
  LatticeBasis basis(2, {{Rat(1), Rat(1)}, {Rat(0), Rat(2)}});
  for (int trial = 0; trial < 50; ++trial) {
    RatVec x{Rat(num(rng), 7), Rat(num(rng), 5)};
    RatVec red;
    auto k = cell_reduce(basis, x, &red);
    CHECK(k.size() == 2);
    RatVec red2;
    auto k2 = cell_reduce(basis, red, &red2);
    for (long v : k2) CHECK(v == 0);
    CHECK(red2 == red);
  }
}

TEST_CASE("covering counts") {
  auto idw = covering_count(Window::ball(1, 1.0), Window::ball(1, 1.0));
  CHECK(idw.count == 1);
  CHECK(idw.centers[0][0] == doctest::Approx(0.0));

  // interval (0,2) covered by open unit intervals: greedy needs 3
  auto v1 = Window::box(1, {1.0, 0, 0}, {1.0, 0, 0});
  auto v2 = Window::box(1, {0.5, 0, 0}, {0.5, 0, 0});
  CHECK(covering_count(v1, v2).count == 3);

  CHECK(covering_count(Window::ball(1, 1.0), Window::ball(1, 2.0)).count == 1);
  CHECK(covering_count(Window::ball(2, 1.0), Window::ball(2, 1.0)).count == 1);
}

TEST_CASE("torus mean") {
  auto sq = square_wave_2periodic();
  PeriodStructure period2 = PeriodStructure::line(Rat(2));
  auto m = torus_mean(sq, period2, 64);
  CHECK(m.mean == 0.0);  // equal counts of +1 and -1 on an even grid

  PeriodStructure period1 = PeriodStructure::line(Rat(1));
  Sampler constant = [](const Point&) { return 3.25; };
  CHECK(torus_mean(constant, period1, 32).mean == doctest::Approx(3.25));

  Sampler sine = [](const Point& x) { return std::sin(2.0 * M_PI * x[0]); };
  CHECK(torus_mean(sine, period1, 64).mean == doctest::Approx(0.0).epsilon(1e-12));

  // declared period 1 on the square wave is invalid
  CHECK_THROWS_AS(torus_mean(sq, period1, 64), std::invalid_argument);
}

TEST_CASE("torus mean is invariant under lattice-aligned origin shifts") {
  auto sq = square_wave_2periodic();
  PeriodStructure period2 = PeriodStructure::line(Rat(2));
  double base = torus_mean_at(sq, period2, 64, {});
  double shifted = torus_mean_at(sq, period2, 64, {Rat(2)});
  double shifted2 = torus_mean_at(sq, period2, 64, {Rat(-4)});
  CHECK(base == shifted);
  CHECK(base == shifted2);
}

TEST_CASE("validate_periods reports grid-L1 discrepancies") {
  auto sq = square_wave_2periodic();
  auto rep_ok = validate_periods(sq, PeriodStructure::line(Rat(2)), 1e-12);
  CHECK(rep_ok.pass);
  CHECK(rep_ok.max_discrepancy == 0.0);

  auto rep_bad = validate_periods(sq, PeriodStructure::line(Rat(1)), 1e-12);
  CHECK_FALSE(rep_bad.pass);
  CHECK(rep_bad.max_discrepancy == doctest::Approx(2.0));

  // constancy in x2
  Sampler stripes = [](const Point& x) { return std::sin(2.0 * M_PI * x[0]); };
  PeriodStructure s2(2, {{Rat(0), Rat(1)}}, {{Rat(1), Rat(0)}});
  CHECK(validate_periods(stripes, s2, 1e-9).pass);
}
