#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "decaylab/poly.hpp"

using namespace decaylab;

TEST_CASE("poly arithmetic and calculus") {
  Poly p({Rat(1), Rat(-2), Rat(0), Rat(1, 3)});  // 1 - 2u + u^3/3
  CHECK(p.eval(Rat(3)) == Rat(1) - Rat(6) + Rat(9));
  CHECK(p.deriv().c == RatVec{Rat(-2), Rat(0), Rat(1)});
  CHECK(p.antideriv().eval(Rat(0)) == 0);
  CHECK((p + p.scaled(Rat(-1))).is_zero());
}

TEST_CASE("piecewise construction validates") {
  // kink at 0: -u then 0, continuous
  PiecewisePoly f({Rat(-2), Rat(0), Rat(2)}, {Poly({Rat(0), Rat(-1)}), Poly({Rat(0)})});
  CHECK(f.eval(-1.0) == 1.0);
  CHECK(f.eval(1.0) == 0.0);
  CHECK(f.eval(0.0) == 0.0);

  // discontinuous at 0 must be rejected
  CHECK_THROWS_AS(PiecewisePoly({Rat(-1), Rat(0), Rat(1)}, {Poly({Rat(1)}), Poly({Rat(0)})}),
                  std::invalid_argument);
  // degree 4 rejected
  CHECK_THROWS_AS(PiecewisePoly::single(Rat(0), Rat(1), Poly({Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)})),
                  std::invalid_argument);
}

TEST_CASE("derivative bounds and ranges") {
  PiecewisePoly cubic = PiecewisePoly::single(Rat(-2), Rat(2), Poly({Rat(0), Rat(0), Rat(0), Rat(1, 3)}));
  CHECK(cubic.deriv_bound(-2, 2) == doctest::Approx(4.0));  // max of u^2
  CHECK(cubic.deriv_bound(-1, 1) == doctest::Approx(1.0));

  PiecewisePoly kink({Rat(-2), Rat(0), Rat(2)}, {Poly({Rat(0), Rat(-1)}), Poly({Rat(0)})});
  CHECK(kink.deriv_bound(-2, 2) == doctest::Approx(1.0));
  auto [mn, mx] = kink.range_on(-1.0, 1.0);
  CHECK(mn == doctest::Approx(0.0));
  CHECK(mx == doctest::Approx(1.0));

  // interior extremum: u^2/2 on [-1, 1] has min 0 at the critical point
  PiecewisePoly burg = PiecewisePoly::single(Rat(-2), Rat(2), Poly({Rat(0), Rat(0), Rat(1, 2)}));
  auto [bmn, bmx] = burg.range_on(-1.0, 1.0);
  CHECK(bmn == doctest::Approx(0.0));
  CHECK(bmx == doctest::Approx(0.5));
}

TEST_CASE("combine merges breakpoints exactly") {
  PiecewisePoly a({Rat(-2), Rat(0), Rat(2)}, {Poly({Rat(0), Rat(-1)}), Poly({Rat(0)})});
  PiecewisePoly b = PiecewisePoly::single(Rat(-2), Rat(2), Poly({Rat(0), Rat(0), Rat(1, 2)}));
  auto c = PiecewisePoly::combine({&a, &b}, {Rat(2), Rat(3)});
  for (double u : {-1.7, -0.3, 0.0, 0.4, 1.9}) {
    CHECK(c.eval(u) == doctest::Approx(2.0 * a.eval(u) + 3.0 * b.eval(u)).epsilon(1e-15));
  }
  CHECK(c.piece_count() == 2);
}

TEST_CASE("compiled evaluator matches the exact one") {
  PiecewisePoly f({Rat(-2), Rat(-1, 2), Rat(1), Rat(2)},
                  {Poly({Rat(1), Rat(2)}), Poly({Rat(0)}), Poly({Rat(-1), Rat(1)})});
  auto g = CompiledPiecewise::from(f);
  for (double u = -2.0; u <= 2.0; u += 0.01) {
    CHECK(g.eval(u) == doctest::Approx(f.eval(u)).epsilon(1e-14));
  }
}
