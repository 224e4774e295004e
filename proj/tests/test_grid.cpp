#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "decaylab/grid.hpp"

#include <cmath>
#include <random>

using namespace decaylab;

TEST_CASE("grid construction and indexing") {
  GridField g(2, {8, 4, 1}, {0.5, 0.25, 1}, {-2, 0, 0});
  CHECK(g.size() == 32);
  CHECK(g.cell_volume() == doctest::Approx(0.125));
  CHECK(g.center(0, 0)[0] == doctest::Approx(-1.75));
  CHECK(g.center(0, 0)[1] == doctest::Approx(0.125));
  CHECK(g.wrap(0, -1) == 7);
  CHECK(g.wrap(0, 8) == 0);
  CHECK_THROWS_AS(GridField(1, {2, 1, 1}, {1, 1, 1}, {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("sampling at cell centers") {
  auto g = GridField::sample(1, {4, 1, 1}, {0.5, 1, 1}, {0, 0, 0},
                             [](const Point& x) { return x[0]; });
  CHECK(g.at(0) == doctest::Approx(0.25));
  CHECK(g.at(3) == doctest::Approx(1.75));
}

TEST_CASE("total mass") {
  GridField ones(1, {8, 1, 1}, {0.25, 1, 1}, {0, 0, 0});
  for (auto& v : ones.data) v = 1.0;
  CHECK(total_mass(ones) == doctest::Approx(2.0));  // torus of volume 2

  // square wave +-1 on [0,2): exact cancellation
  auto sq = GridField::sample(1, {64, 1, 1}, {2.0 / 64, 1, 1}, {0, 0, 0},
                              [](const Point& x) { return x[0] < 1.0 ? 1.0 : -1.0; });
  CHECK(total_mass(sq) == 0.0);
}

TEST_CASE("tree sum matches the sequential sum") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> U(-1, 1);
  std::vector<double> v(1 << 14);
  for (auto& x : v) x = U(rng);
  double seq = 0;
  for (double x : v) seq += x;
  CHECK(tree_sum(v) == doctest::Approx(seq).epsilon(1e-12));
}

TEST_CASE("l1 helpers") {
  auto a = GridField::sample(1, {16, 1, 1}, {0.125, 1, 1}, {0, 0, 0}, [](const Point&) { return 1.0; });
  auto b = GridField::sample(1, {16, 1, 1}, {0.125, 1, 1}, {0, 0, 0}, [](const Point&) { return -1.0; });
  CHECK(l1_distance(a, b) == doctest::Approx(4.0));
  CHECK(l1_to_constant(a, 0.0) == doctest::Approx(2.0));
}
