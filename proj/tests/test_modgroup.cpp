#include <cmath>

#include <doctest.h>

#include "hyperlat/modgroup.hpp"
#include "test_util.hpp"

using namespace hyperlat;

TEST_CASE("base point parsing and derived fields") {
  BasePoint i = BasePoint::parse("i");
  CHECK(i.u == 0);
  CHECK(i.ksq == 1);
  CHECK(i.vsq == 1);
  CHECK(i.delta == 2);
  CHECK(i.stabilizer_order() == 2);

  BasePoint rho = BasePoint::parse("rho");
  CHECK(rho.u == Rat(1, 2));
  CHECK(rho.ksq == 1);
  CHECK(rho.vsq == Rat(3, 4));
  CHECK(rho.stabilizer_order() == 3);

  BasePoint w = BasePoint::parse("u=1/3,ksq=3/2");
  CHECK(w.vsq == Rat(3, 2) - Rat(1, 9));
  CHECK(w.stabilizer_order() == 1);
  CHECK(w.delta == 2 * w.vsq);

  CHECK_THROWS(BasePoint::parse("u=1,ksq=1"));  // vsq = 0
  CHECK_THROWS(BasePoint::parse("nonsense"));
}

TEST_CASE("normalization and group operations") {
  GroupElement g = normalize(-1, -1, 0, -1);  // == (1,1,0,1) in PSL2
  CHECK(g == normalize(1, 1, 0, 1));
  CHECK_THROWS_AS(normalize(1, 1, 1, 1), invalid_element_error);

  testutil::Rng rng(7);
  for (int it = 0; it < 50; ++it) {
    GroupElement a = testutil::random_element(rng);
    GroupElement b = testutil::random_element(rng);
    CHECK(mul(a, a.inverse()).is_identity());
    CHECK(mul(mul(a, b), b.inverse()) == a);
    CHECK(a.a * a.d - a.b * a.c == 1);
  }
}

TEST_CASE("orbit coordinates satisfy the determinant identity") {
  testutil::Rng rng(11);
  for (const auto& spec : testutil::base_point_specs()) {
    BasePoint w = BasePoint::parse(spec);
    for (int it = 0; it < 40; ++it) {
      GroupElement g = testutil::random_element(rng);
      OrbitCoords oc = coords(w, g);
      CHECK(oc.X * oc.Y - oc.Z * oc.Z == w.vsq);
      CHECK(oc.T == oc.X + w.ksq * oc.Y - 2 * w.u * oc.Z);
      CHECK(oc.T >= w.delta);  // cosh >= 1
    }
  }
}

TEST_CASE("golden angle at i for the unit translation") {
  BasePoint i = BasePoint::parse("i");
  GroupElement t = normalize(1, 1, 0, 1);
  OrbitCoords oc = coords(i, t);
  CHECK(oc.X == 2);
  CHECK(oc.Y == 1);
  CHECK(oc.Z == 1);
  CHECK(oc.T == 3);
  AngleSample s = angle(i, t, oc);
  CHECK(std::sin(s.theta) == doctest::Approx(2 / std::sqrt(5)).epsilon(1e-14));
  CHECK(std::cos(s.theta) == doctest::Approx(-1 / std::sqrt(5)).epsilon(1e-14));
}

TEST_CASE("stabilizing elements have no direction angle") {
  BasePoint i = BasePoint::parse("i");
  GroupElement s = normalize(0, -1, 1, 0);  // fixes i
  CHECK(cosh_displacement(i, s) == 1);
  CHECK_THROWS_AS(angle(i, s), stabilizer_error);
  CHECK_THROWS_AS((void)psi(i, s), stabilizer_error);
}

TEST_CASE("translation difference identity, exact") {
  testutil::Rng rng(23);
  for (const auto& spec : testutil::base_point_specs()) {
    BasePoint w = BasePoint::parse(spec);
    for (int it = 0; it < 60; ++it) {
      GroupElement g = testutil::random_element(rng);
      GroupElement m = testutil::random_element(rng);
      Rat lhs = phi(w, g) - phi(w, mul(g, m));
      CHECK(lhs == xi_m(w, m, g.c, g.d));
    }
  }
}

TEST_CASE("geodesic intercept lies on the circle through both endpoints") {
  testutil::Rng rng(31);
  for (const auto& spec : testutil::base_point_specs()) {
    BasePoint w = BasePoint::parse(spec);
    for (int it = 0; it < 40; ++it) {
      GroupElement g = testutil::random_element(rng);
      OrbitCoords oc = coords(w, g);
      if (oc.T == w.delta) continue;
      double u0 = w.uf, v0 = w.v;
      double x1 = to_double(oc.Z / oc.Y), y1 = v0 / to_double(oc.Y);
      if (std::fabs(x1 - u0) < 1e-9) continue;  // vertical geodesic
      // Center of the half-circle through omega and gamma.omega.
      double c = (u0 * u0 + v0 * v0 - x1 * x1 - y1 * y1) / (2 * (u0 - x1));
      double r2 = (u0 - c) * (u0 - c) + v0 * v0;
      double p = psi(w, g);
      CHECK((p - c) * (p - c) ==
            doctest::Approx(r2).epsilon(1e-8));
    }
  }
}
