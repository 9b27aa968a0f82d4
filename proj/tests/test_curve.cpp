#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "saw/curve.hpp"
#include "saw/errors.hpp"

using namespace saw;

namespace {

RationalPoint pt(long xn, long xd, long yn, long yd) {
  return RationalPoint(Rat(xn, xd), Rat(yn, yd));
}

RationalPoint pt(long x, long y) { return pt(x, 1, y, 1); }

}  // namespace

TEST_CASE("discriminant and bad primes") {
  Curve hv(0, 3);
  CHECK(hv.disc() == -3888);
  CHECK(hv.bad_primes() == std::vector<Int>{2, 3});
  CHECK(real_components(hv) == 1);

  Curve cong(-36, 0);
  CHECK(cong.disc() == 2985984);
  CHECK(cong.bad_primes() == std::vector<Int>{2, 3});
  CHECK(real_components(cong) == 2);

  CHECK_THROWS_AS(Curve(-3, 2), SingularCurve);  // disc = 0
  CHECK_THROWS_AS(Curve(0, 0), SingularCurve);
}

TEST_CASE("membership") {
  Curve hv(0, 3);
  CHECK(on_curve(hv, pt(1, 2)));
  CHECK(on_curve(hv, pt(-23, 16, -11, 64)));
  CHECK(on_curve(hv, RationalPoint::infinity()));
  CHECK_FALSE(on_curve(hv, pt(1, 3)));
}

TEST_CASE("chord-tangent arithmetic on known values") {
  Curve hv(0, 3);
  RationalPoint q = pt(1, 2);
  RationalPoint q2 = scalar_mul(hv, 2, q);
  CHECK(q2 == pt(-23, 16, -11, 64));
  CHECK(add(hv, q, q) == q2);
  CHECK(add(hv, q, neg(hv, q)) == RationalPoint::infinity());
  CHECK(scalar_mul(hv, 0, q) == RationalPoint::infinity());
  CHECK(scalar_mul(hv, -1, q) == pt(1, -2));
  CHECK(scalar_mul(hv, 1, q) == q);

  Curve c1(0, 1);
  RationalPoint t = pt(2, 3);  // order 6
  CHECK(scalar_mul(c1, 2, t) == pt(0, 1));
  CHECK(scalar_mul(c1, 3, t) == pt(-1, 0));
  CHECK(scalar_mul(c1, 6, t) == RationalPoint::infinity());
}

TEST_CASE("group laws hold on random small multiples") {
  Curve hv(0, 3);
  RationalPoint q = pt(1, 2);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 12; ++i) {
    long k1 = static_cast<long>(rng() % 17) - 8;
    long k2 = static_cast<long>(rng() % 17) - 8;
    RationalPoint p1 = scalar_mul(hv, k1, q);
    RationalPoint p2 = scalar_mul(hv, k2, q);
    // commutativity and bilinearity against the exact multiple
    CHECK(add(hv, p1, p2) == add(hv, p2, p1));
    CHECK(add(hv, p1, p2) == scalar_mul(hv, k1 + k2, q));
    // identity and inverse
    CHECK(add(hv, p1, RationalPoint::infinity()) == p1);
    CHECK(add(hv, p1, neg(hv, p1)) == RationalPoint::infinity());
    CHECK(on_curve(hv, p1));
  }
  // associativity over a fixed triple of independent-looking points
  RationalPoint a = scalar_mul(hv, 2, q), b = scalar_mul(hv, 3, q),
                c = scalar_mul(hv, -5, q);
  CHECK(add(hv, add(hv, a, b), c) == add(hv, a, add(hv, b, c)));
}

TEST_CASE("torsion detection stops at the rational bound") {
  Curve hv(0, 3);
  CHECK_FALSE(torsion_order(hv, pt(1, 2)).has_value());
  CHECK(torsion_order(hv, RationalPoint::infinity()) == 1);

  Curve c1(0, 1);
  CHECK(torsion_order(c1, pt(2, 3)) == 6);
  CHECK(torsion_order(c1, pt(0, 1)) == 3);
  CHECK(torsion_order(c1, pt(-1, 0)) == 2);

  Curve cong(-36, 0);
  CHECK(torsion_order(cong, pt(0, 0)) == 2);
  CHECK(torsion_order(cong, pt(6, 0)) == 2);
  CHECK(torsion_order(cong, pt(-6, 0)) == 2);
  CHECK_FALSE(torsion_order(cong, pt(-3, 9)).has_value());
  CHECK_FALSE(torsion_order(cong, pt(25, 4, 35, 8)).has_value());
}

TEST_CASE("primitive triples") {
  ProjectiveTriple t = primitive_triple(pt(-23, 16, -11, 64));
  CHECK(t.X == -92);
  CHECK(t.Y == -11);
  CHECK(t.Z == 64);
  ProjectiveTriple o = primitive_triple(RationalPoint::infinity());
  CHECK(o.X == 0);
  CHECK(o.Y == 1);
  CHECK(o.Z == 0);
  ProjectiveTriple i = primitive_triple(pt(1, 2));
  CHECK(i.X == 1);
  CHECK(i.Y == 2);
  CHECK(i.Z == 1);
}

TEST_CASE("puncture sets validate their contents") {
  Curve c1(0, 1);
  PunctureSet m = PunctureSet::create(
      c1, {RationalPoint::infinity(), pt(2, 3), pt(-1, 0)});
  CHECK(m.orders == std::vector<unsigned>{1, 6, 2});
  CHECK(m.n == 6);

  Curve hv(0, 3);
  CHECK_THROWS_AS(PunctureSet::create(hv, {pt(1, 2)}), NotTorsion);
  CHECK_THROWS_AS(PunctureSet::create(hv, {}), std::invalid_argument);
  CHECK_THROWS_AS(PunctureSet::create(
                      hv, {RationalPoint::infinity(), RationalPoint::infinity()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PunctureSet::create(hv, {pt(1, 3)}), std::invalid_argument);
}
