#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "saw/integral.hpp"

using namespace saw;

namespace {

RationalPoint pt(long xn, long xd, long yn, long yd) {
  return RationalPoint(Rat(xn, xd), Rat(yn, yd));
}

RationalPoint pt(long x, long y) { return pt(x, 1, y, 1); }

bool smooth_over(const Int& d, const std::vector<Int>& T) {
  Int m = d;
  for (const auto& p : T) {
    while (m % p == 0) m /= p;
  }
  return m == 1;
}

}  // namespace

TEST_CASE("enumeration on y^2 = x^3 + 3 with T = {2, 3}") {
  Curve hv(0, 3);
  auto punctures = PunctureSet::create(hv, {RationalPoint::infinity()});
  std::vector<Int> T = {2, 3};
  auto pts = enumerate_T_integral(hv, punctures, T, SearchBounds{12, 10000});
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].point == pt(1, -2));
  CHECK(pts[1].point == pt(1, 2));
  CHECK(pts[2].point == pt(-23, 16, -11, 64));
  CHECK(pts[3].point == pt(-23, 16, 11, 64));
  CHECK(pts[0].denominator_support.empty());
  CHECK(pts[2].denominator_support == std::vector<Int>{2});
}

TEST_CASE("enumeration on y^2 = x^3 - 36x with T = {2, 3}") {
  Curve cong(-36, 0);
  auto punctures = PunctureSet::create(
      cong, {RationalPoint::infinity(), pt(0, 0), pt(6, 0), pt(-6, 0)});
  std::vector<Int> T = {2, 3};
  auto pts = enumerate_T_integral(cong, punctures, T, SearchBounds{12, 10000});
  std::vector<RationalPoint> expect = {
      pt(-3, -9),  pt(-3, 9),   pt(-2, -8),  pt(-2, 8),
      pt(12, -36), pt(12, 36),  pt(18, -72), pt(18, 72),
      pt(294, -5040), pt(294, 5040), pt(25, 4, -35, 8), pt(25, 4, 35, 8)};
  REQUIRE(pts.size() == expect.size());
  for (size_t i = 0; i < expect.size(); ++i) CHECK(pts[i].point == expect[i]);
  // punctures themselves are excluded even though they are integral
  for (const auto& tp : pts) {
    for (const auto& m : punctures.points) CHECK_FALSE(tp.point == m);
  }
}

TEST_CASE("every listed point is on the curve, reduced, and T-smooth") {
  Curve cong(-36, 0);
  auto punctures = PunctureSet::create(cong, {RationalPoint::infinity()});
  std::vector<Int> T = {2, 3, 5};
  auto pts = enumerate_T_integral(cong, punctures, T, SearchBounds{20, 3000});
  CHECK(!pts.empty());
  for (const auto& tp : pts) {
    CHECK(on_curve(cong, tp.point));
    Int xd = tp.point.x().get_den();
    Int yd = tp.point.y().get_den();
    CHECK(smooth_over(xd, T));
    CHECK(smooth_over(yd, T));
    // support is exactly the primes dividing the denominator parameter d,
    // where x = u/d^2
    for (const auto& p : tp.denominator_support) CHECK(xd % (p * p) == 0);
    Int rebuilt = 1;
    for (const auto& p : tp.denominator_support) {
      CHECK(std::binary_search(T.begin(), T.end(), p));
      while (xd % p == 0) xd /= p;
    }
    CHECK(xd == 1);
  }
}

TEST_CASE("the list is closed under negation and strictly ordered") {
  Curve hv(0, 3);
  auto punctures = PunctureSet::create(hv, {RationalPoint::infinity()});
  auto pts = enumerate_T_integral(hv, punctures, {2, 3, 5, 7},
                                  SearchBounds{30, 5000});
  std::set<std::pair<Rat, Rat>> seen;
  for (const auto& tp : pts) {
    CHECK(seen.insert({tp.point.x(), tp.point.y()}).second);  // no duplicates
  }
  for (const auto& tp : pts) {
    if (tp.point.y() == 0) continue;
    CHECK(seen.count({tp.point.x(), -tp.point.y()}) == 1);
  }
}

TEST_CASE("growing the box only extends the list") {
  Curve cong(-36, 0);
  auto punctures = PunctureSet::create(cong, {RationalPoint::infinity()});
  std::vector<Int> T = {2, 3};
  auto small = enumerate_T_integral(cong, punctures, T, SearchBounds{4, 300});
  auto large = enumerate_T_integral(cong, punctures, T, SearchBounds{12, 10000});
  CHECK(small.size() <= large.size());
  std::set<std::pair<Rat, Rat>> in_large;
  for (const auto& tp : large) in_large.insert({tp.point.x(), tp.point.y()});
  for (const auto& tp : small)
    CHECK(in_large.count({tp.point.x(), tp.point.y()}) == 1);
}

TEST_CASE("empty T restricts to integer points") {
  Curve hv(0, 3);
  auto punctures = PunctureSet::create(hv, {RationalPoint::infinity()});
  auto pts = enumerate_T_integral(hv, punctures, {}, SearchBounds{12, 10000});
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].point == pt(1, -2));
  CHECK(pts[1].point == pt(1, 2));
  for (const auto& tp : pts) CHECK(tp.denominator_support.empty());
}
