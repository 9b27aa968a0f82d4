#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "saw/certificate.hpp"
#include "saw/witness.hpp"

using namespace saw;

namespace {

RationalPoint pt(long xn, long xd, long yn, long yd) {
  return RationalPoint(Rat(xn, xd), Rat(yn, yd));
}

RationalPoint pt(long x, long y) { return pt(x, 1, y, 1); }

const RationalPoint kInf = RationalPoint::infinity();

std::vector<Int> ints(std::initializer_list<long> v) {
  return std::vector<Int>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("torsion lcm over puncture sets") {
  Curve c(0, 1);
  CHECK(compute_n(c, {kInf}) == 1);
  CHECK(compute_n(c, {pt(2, 3)}) == 6);
  CHECK(compute_n(c, {pt(2, 3), pt(0, 1), pt(-1, 0)}) == 6);
  CHECK(compute_n(c, {pt(0, 1), pt(-1, 0)}) == 6);  // lcm(3, 2)
  Curve hv(0, 3);
  CHECK_THROWS_AS(compute_n(hv, {pt(1, 2)}), NotTorsion);
  CHECK_THROWS_AS(compute_n(hv, {pt(5, 5)}), std::invalid_argument);
}

TEST_CASE("meeting primes from primitive triple minors") {
  Curve hv(0, 3);
  CHECK(compute_T1(hv, pt(1, 2), {kInf}).empty());
  Curve cong(-36, 0);
  std::vector<RationalPoint> m = {kInf, pt(0, 0), pt(6, 0), pt(-6, 0)};
  CHECK(compute_T1(cong, pt(-3, 9), m) == ints({3}));
  // a pair of affine points with a deep tangency at 2 and 3
  CHECK(compute_T1(cong, pt(12, 36), {pt(12, -36)}) == ints({2, 3}));
  CHECK(compute_T1(cong, pt(25, 4, 35, 8), m) == ints({2, 5, 7}));
  CHECK_THROWS_AS(compute_T1(cong, pt(0, 0), {pt(0, 0)}),
                  std::invalid_argument);
}

TEST_CASE("meeting primes agree with reduction collisions at good places") {
  // for good p: p divides the minor gcd iff the reductions coincide mod p
  Curve cong(-36, 0);
  RationalPoint q = pt(25, 4, 35, 8);
  std::vector<RationalPoint> m = {kInf, pt(0, 0), pt(6, 0), pt(-6, 0)};
  std::vector<Int> t1 = compute_T1(cong, q, m);
  for (unsigned p : num::primes_up_to(100)) {
    if (cong.is_bad(p)) continue;
    bool collide = false;
    ModPoint rq = reduce_point(cong, q, p, 1);
    for (const auto& mp : m) {
      ModPoint rm = mp.is_infinity() ? ModPoint::infinity(p, 1)
                                     : reduce_point(cong, mp, p, 1);
      if (rq == rm) collide = true;
    }
    bool listed = std::binary_search(t1.begin(), t1.end(), Int(p));
    CHECK(collide == listed);
  }
}

TEST_CASE("assembled place set is the sorted union") {
  Curve cong(-36, 0);
  auto m = PunctureSet::create(cong, {kInf, pt(0, 0), pt(6, 0), pt(-6, 0)});
  PlaceSetT t = assemble_T(cong, pt(-3, 9), m, {7, 3});
  CHECK(t.S_finite == ints({3, 7}));
  CHECK(t.bad == ints({2, 3}));
  CHECK(t.T1 == ints({3}));
  CHECK(t.all == ints({2, 3, 7}));
  CHECK_THROWS_AS(assemble_T(cong, pt(-3, 9), m, {4}), std::invalid_argument);
}

TEST_CASE("place selection skips collision primes") {
  Curve hv(0, 3);
  auto mh = PunctureSet::create(hv, {kInf});
  auto ih = enumerate_T_integral(hv, mh, {2, 3}, SearchBounds{12, 10000});
  CHECK(choose_v0(hv, pt(1, 2), ih, ints({2, 3}), 10000) == 5);

  Curve cong(-36, 0);
  auto mc = PunctureSet::create(cong, {kInf, pt(0, 0), pt(6, 0), pt(-6, 0)});
  auto ic = enumerate_T_integral(cong, mc, {2, 3}, SearchBounds{12, 10000});
  REQUIRE(ic.size() == 12);
  // with the full list, 5, 7 and 11 each see a collision with the
  // reduction of some other listed point, so 13 is the first admissible
  CHECK(choose_v0(cong, pt(-3, 9), ic, ints({2, 3}), 10000) == 13);
  // dropping the two largest x-coordinates and the non-integer pair frees 11
  std::vector<TIntegralPoint> sub;
  for (const auto& p : ic) {
    if (p.point.x() == 294 || p.point.x() == Rat(25, 4)) continue;
    sub.push_back(p);
  }
  REQUIRE(sub.size() == 8);
  CHECK(choose_v0(cong, pt(-3, 9), sub, ints({2, 3}), 10000) == 11);
  // an unreachable limit reports failure rather than scanning forever
  CHECK_THROWS_AS(choose_v0(cong, pt(-3, 9), ic, ints({2, 3}), 11),
                  NoAdmissiblePrime);
}

TEST_CASE("progression residue") {
  CHECK(compute_a(1, 6, 5) == 7);
  CHECK(compute_a(2, 20, 13) == 41);
  CHECK(compute_a(1, 4, 5) == 17);  // 5 divides nN + 1, fallback branch
  CHECK_THROWS_AS(compute_a(1, 6, 4), std::invalid_argument);
  CHECK_THROWS_AS(compute_a(0, 6, 5), std::invalid_argument);
  // the chosen residue is always 1 mod nN and coprime to the modulus
  std::mt19937_64 rng(3);
  std::vector<Int> odd_primes = {3, 5, 7, 11, 13, 17, 19, 23};
  for (int i = 0; i < 50; ++i) {
    unsigned long n = 1 + rng() % 12;
    Int N = Int(1 + rng() % 40);
    Int q = odd_primes[rng() % odd_primes.size()];
    Int a = compute_a(n, N, q);
    Int t = Int(n) * N;
    CHECK((a - 1) % t == 0);
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), Int(q * t).get_mpz_t());
    CHECK(g == 1);
  }
}

TEST_CASE("prime samples from a progression") {
  CHECK(dirichlet_primes(7, 30, 6) == ints({7, 37, 67, 97, 127, 157}));
  CHECK(dirichlet_primes(7, 30, 8) ==
        ints({7, 37, 67, 97, 127, 157, 277, 307}));
  CHECK(dirichlet_primes(41, 520, 6) ==
        ints({41, 1601, 4201, 4721, 7321, 7841}));
  CHECK_THROWS_AS(dirichlet_primes(6, 30, 3), InvalidProgression);
  CHECK_THROWS_AS(dirichlet_primes(7, 30, 0), std::invalid_argument);
}

TEST_CASE("congruence checks pass on the reference input") {
  Curve hv(0, 3);
  RationalPoint q = pt(1, 2);
  auto m = PunctureSet::create(hv, {kInf});
  PlaceSetT t = assemble_T(hv, q, m, {});
  auto integral = enumerate_T_integral(hv, m, t.all, SearchBounds{12, 10000});
  ProgressionSpec spec;
  spec.v0 = 5;
  spec.q = 5;
  spec.N = 6;
  spec.n = 1;
  spec.a = 7;
  spec.modulus = 30;
  spec.samples = dirichlet_primes(7, 30, 6);
  CheckReport rep = run_checks(hv, q, m, spec, t, integral, 500, 6);
  CHECK(rep.all_pass());
  CHECK(rep.spec_violation.empty());
  CHECK(rep.reduced_generator == "1:2:1");
  REQUIRE(rep.c1_residues.size() == 6);
  for (const auto& r : rep.c1_residues) CHECK(r == "1:2:1");
  CHECK(rep.val_q_nN == 0);
  for (auto v : rep.c2_valuations) CHECK(v == 0);
  CHECK(rep.c5_scanned_to == 500);  // every prime up to the bound was scanned
  REQUIRE(rep.c6_r_values.size() == 6);
  for (auto r : rep.c6_r_values) CHECK(r == 1);
  CHECK(rep.r_star == 1);

  SUBCASE("a residue outside the progression invalidates the spec") {
    spec.a = 11;  // not 1 mod nN
    CheckReport bad = run_checks(hv, q, m, spec, t, integral, 500, 6);
    CHECK_FALSE(bad.spec_valid);
    CHECK_FALSE(bad.spec_violation.empty());
    CHECK_FALSE(bad.all_pass());
  }
  SUBCASE("a composite sample invalidates the spec") {
    spec.samples[2] = 187;  // 11 * 17, congruent to 7 mod 30
    std::sort(spec.samples.begin(), spec.samples.end());
    CheckReport bad = run_checks(hv, q, m, spec, t, integral, 500, 6);
    CHECK_FALSE(bad.spec_valid);
  }
  SUBCASE("a wrong group order breaks the valuation check") {
    // N = 10 keeps the progression internally consistent (a = 11,
    // modulus = 50) but 11*Q is no longer Q mod 5
    spec.N = 10;
    spec.a = compute_a(1, 10, 5);
    spec.modulus = 50;
    spec.samples = dirichlet_primes(spec.a, 50, 6);
    CheckReport bad = run_checks(hv, q, m, spec, t, integral, 500, 6);
    CHECK(bad.spec_valid);
    CHECK_FALSE(bad.c1_generator_residue);
    CHECK_FALSE(bad.all_pass());
  }
}

TEST_CASE("full pipeline on the reference input") {
  WitnessConfig cfg;
  cfg.curve_a = 0;
  cfg.curve_b = 3;
  cfg.generator = pt(1, 2);
  cfg.punctures = {kInf};
  cfg.sample_count = 6;
  WitnessCertificate cert = build_witness(cfg);
  CHECK(cert.curve_a == 0);
  CHECK(cert.curve_b == 3);
  CHECK(cert.disc == -3888);
  CHECK(cert.bad_primes == ints({2, 3}));
  CHECK(cert.real_comps == 1);
  CHECK(cert.n == 1);
  CHECK(cert.T.all == ints({2, 3}));
  CHECK(cert.T.T1.empty());
  CHECK(cert.prog.v0 == 5);
  CHECK(cert.prog.N == 6);
  CHECK(cert.prog.a == 7);
  CHECK(cert.prog.modulus == 30);
  CHECK(cert.prog.samples == ints({7, 37, 67, 97, 127, 157}));
  REQUIRE(cert.integral_points.size() == 4);
  CHECK(cert.integral_points.front() == cfg.generator);
  CHECK(cert.report.all_pass());
  CHECK(cert.report.r_star == 1);
}

TEST_CASE("pipeline on the rank one curve with three affine punctures") {
  WitnessConfig cfg;
  cfg.curve_a = -36;
  cfg.curve_b = 0;
  cfg.generator = pt(-3, 9);
  cfg.punctures = {kInf, pt(0, 0), pt(6, 0), pt(-6, 0)};
  cfg.sample_count = 6;
  WitnessCertificate cert = build_witness(cfg);
  CHECK(cert.n == 2);
  CHECK(cert.T.T1 == ints({3}));
  CHECK(cert.T.all == ints({2, 3}));
  CHECK(cert.prog.v0 == 13);
  CHECK(cert.prog.N == 20);
  CHECK(cert.prog.a == 41);
  CHECK(cert.prog.modulus == 520);
  CHECK(cert.prog.samples == ints({41, 1601, 4201, 4721, 7321, 7841}));
  CHECK(cert.integral_points.size() == 12);
  CHECK(cert.report.all_pass());
}

TEST_CASE("inputs ruled out by the pipeline") {
  WitnessConfig cfg;
  cfg.curve_a = -36;
  cfg.curve_b = 0;
  cfg.punctures = {kInf};

  SUBCASE("a torsion generator cannot witness anything") {
    cfg.generator = pt(0, 0);
    CHECK_THROWS_AS(build_witness(cfg), TorsionGenerator);
  }
  SUBCASE("punctures must be torsion") {
    cfg.generator = pt(-3, 9);
    cfg.punctures = {kInf, pt(-2, 8)};
    CHECK_THROWS_AS(build_witness(cfg), NotTorsion);
  }
  SUBCASE("the generator must appear in the search box") {
    cfg.generator = pt(25, 4, 35, 8);
    cfg.punctures = {kInf, pt(0, 0), pt(6, 0), pt(-6, 0)};
    cfg.bounds = SearchBounds{12, 10};
    CHECK_THROWS_AS(build_witness(cfg), GeneratorOutsideSearch);
  }
  SUBCASE("a singular curve is rejected up front") {
    cfg.curve_a = 0;
    cfg.curve_b = 0;
    cfg.generator = pt(1, 1);
    CHECK_THROWS_AS(build_witness(cfg), SingularCurve);
  }
}
