#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "decaylab/flux.hpp"

#include <array>
#include <cmath>
#include <random>

using namespace decaylab;

TEST_CASE("presets and directional components") {
  auto cubic = flux_preset("cubic2d");
  std::array<double, 2> e1{1.0, 0.0};
  auto proj = directional_component(cubic, std::span<const double>(e1));
  for (double u : {-1.5, -0.2, 0.7, 1.9}) CHECK(proj.eval(u) == doctest::Approx(u * u / 2).epsilon(1e-14));

  auto ex1 = flux_preset("example1");
  std::array<double, 1> one{1.0};
  auto dir = directional_component(ex1, std::span<const double>(one));
  CHECK(dir.eval(-1.0) == doctest::Approx(1.0));
  CHECK(dir.eval(1.0) == doctest::Approx(0.0));

  std::array<double, 2> xi{2.0, 3.0};
  auto mix = directional_component(cubic, std::span<const double>(xi));
  for (double u : {-1.0, 0.5, 1.5}) CHECK(mix.eval(u) == doctest::Approx(u * u + u * u * u).epsilon(1e-13));
}

TEST_CASE("directional component is linear in the direction") {
  auto cubic = flux_preset("cubic2d");
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    std::array<double, 2> xi{U(rng), U(rng)}, zeta{U(rng), U(rng)};
    double a = U(rng), b = U(rng);
    std::array<double, 2> combo{a * xi[0] + b * zeta[0], a * xi[1] + b * zeta[1]};
    auto f_combo = directional_component(cubic, std::span<const double>(combo));
    auto f_xi = directional_component(cubic, std::span<const double>(xi));
    auto f_zeta = directional_component(cubic, std::span<const double>(zeta));
    for (double u = -2; u <= 2; u += 0.25) {
      CHECK(f_combo.eval(u) == doctest::Approx(a * f_xi.eval(u) + b * f_zeta.eval(u)).epsilon(1e-12));
    }
  }
}

TEST_CASE("affineness tests") {
  PiecewisePoly aff = PiecewisePoly::single(Rat(-2), Rat(2), Poly({Rat(-1), Rat(3)}));
  CHECK(is_affine_on(aff, 0.0, 1.0, 1e-9));

  auto ex1 = flux_preset("example1");
  CHECK_FALSE(is_affine_on(ex1.comp[0], -1.0, 1.0, 1e-9));
  CHECK(is_affine_on(ex1.comp[0], 0.25, 1.75, 1e-9));   // flat side
  CHECK(is_affine_on(ex1.comp[0], -1.75, -0.25, 1e-9)); // sloped side

  auto burg = flux_preset("burgers");
  CHECK_FALSE(is_affine_on(burg.comp[0], 0.2, 0.4, 1e-9));
  CHECK_THROWS_AS(is_affine_on(burg.comp[0], 0.5, 0.5, 1e-9), std::invalid_argument);

  // sampled fallback for callable data
  CHECK(is_affine_on([](double u) { return 3 * u - 1; }, 0.0, 1.0, 1e-9));
  CHECK_FALSE(is_affine_on([](double u) { return std::max(0.0, -u); }, -1.0, 1.0, 1e-9));
}

TEST_CASE("nonlinearity set on the reference fluxes") {
  PeriodStructure z1 = PeriodStructure::line(Rat(2));  // G' = (1/2) Z in 1D
  const double dg = 1.0 / 64.0, tau = 1e-9;

  auto f_ex1 = nonlinearity_set(flux_preset("example1"), z1, dg, tau);
  REQUIRE(f_ex1.intervals.size() == 1);
  CHECK(f_ex1.intervals[0].first == 0.0);
  CHECK(f_ex1.intervals[0].second == 0.0);
  CHECK(f_ex1.exact);

  auto f_burg = nonlinearity_set(flux_preset("burgers"), z1, dg, tau);
  REQUIRE(f_burg.intervals.size() == 1);
  CHECK(f_burg.intervals[0].first == doctest::Approx(-2.0));
  CHECK(f_burg.intervals[0].second == doctest::Approx(2.0));

  PeriodStructure z2 = PeriodStructure::lattice_only({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
  auto f_cubic = nonlinearity_set(flux_preset("cubic2d"), z2, dg, tau);
  REQUIRE(f_cubic.intervals.size() == 1);
  CHECK(f_cubic.intervals[0].first == doctest::Approx(-2.0));
  CHECK(f_cubic.intervals[0].second == doctest::Approx(2.0));

  // affine flux: F is empty for every nontrivial dual lattice
  auto f_lin = nonlinearity_set(flux_preset("linear2d"), z2, dg, tau);
  CHECK(f_lin.intervals.empty());

  CHECK_THROWS_AS(nonlinearity_set(flux_preset("burgers"), z1, 0.0, tau), std::invalid_argument);
}

TEST_CASE("F monotone under dual-lattice enlargement") {
  // sublattice 2Z has the larger dual (1/2)Z
  PeriodStructure coarse = PeriodStructure::line(Rat(2));
  PeriodStructure fine = PeriodStructure::line(Rat(1));
  const double dg = 1.0 / 32.0;
  auto f_small = nonlinearity_set(flux_preset("example1"), fine, dg, 1e-9);
  auto f_large = nonlinearity_set(flux_preset("example1"), coarse, dg, 1e-9);
  for (const auto& [a, b] : f_small.intervals) {
    bool contained = false;
    for (const auto& [c, d] : f_large.intervals) contained = contained || (c <= a && b <= d);
    CHECK(contained);
  }
}

TEST_CASE("consistency: affine directions exclude the interior from F") {
  PeriodStructure z1 = PeriodStructure::line(Rat(1));
  auto ex1 = flux_preset("example1");
  CHECK(is_affine_on(ex1.comp[0], 0.5, 1.5, 1e-9));
  auto f = nonlinearity_set(ex1, z1, 1.0 / 64.0, 1e-9);
  CHECK_FALSE(f.intersects_open(0.5, 1.5));
}

TEST_CASE("genuine nonlinearity checks") {
  const double eps_list[] = {0.5, 0.25, 0.125};
  NonlinearitySet full{{{-1.0, 1.0}}, 1.0 / 64.0, 1e-9, true};
  auto r1 = check_genuine_nonlinearity(full, 0.0, eps_list);
  CHECK(r1.theorem1_ok);
  CHECK(r1.gn_ok);

  NonlinearitySet point{{{0.0, 0.0}}, 1.0 / 64.0, 1e-9, true};
  auto r2 = check_genuine_nonlinearity(point, 0.0, eps_list);
  CHECK_FALSE(r2.theorem1_ok);
  CHECK(r2.gn_ok);

  NonlinearitySet empty{{}, 1.0 / 64.0, 1e-9, true};
  auto r3 = check_genuine_nonlinearity(empty, 0.0, eps_list);
  CHECK_FALSE(r3.theorem1_ok);
  CHECK_FALSE(r3.gn_ok);
}

TEST_CASE("lipschitz bounds") {
  CHECK(lipschitz_bound(flux_preset("burgers"), -1, 1)[0] == doctest::Approx(1.0));
  CHECK(lipschitz_bound(flux_preset("example1"), -2, 2)[0] == doctest::Approx(1.0));
  auto cubic = flux_preset("cubic2d");
  CHECK(lipschitz_bound(cubic, -2, 2)[1] == doctest::Approx(4.0));
  CHECK_THROWS_AS(lipschitz_bound(cubic, -3, 1), std::invalid_argument);
}

TEST_CASE("flat band flux has an affine window and nothing else degenerate") {
  auto flux = flat_band_flux_2d(Rat(0), Rat(2, 5));
  CHECK(flux.eval(1, 0.3) == doctest::Approx(0.0));
  CHECK(flux.eval(1, -0.1) == doctest::Approx(0.0));
  CHECK(flux.eval(1, 1.0) == doctest::Approx(0.18).epsilon(1e-12));  // (1 - 0.4)^2 / 2
  CHECK(lipschitz_bound(flux, -0.4, 0.4)[1] == doctest::Approx(0.0));
  CHECK(lipschitz_bound(flux, -0.4, 0.4)[0] == doctest::Approx(0.4));
}
