#include "saw/witness.hpp"

#include <algorithm>
#include <stdexcept>

#include "saw/certificate.hpp"
#include "saw/parallel.hpp"

namespace saw {

namespace {

std::vector<Int> sorted_unique(std::vector<Int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool member(const std::vector<Int>& sorted, const Int& x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace

bool CheckReport::all_pass() const {
  return spec_valid && c1_generator_residue && c2_valuation &&
         c3_torsion_fixed && c4_separation && c5_avoidance && c6_depth_stable;
}

unsigned long compute_n(const Curve& c,
                        const std::vector<RationalPoint>& points) {
  Int n = 1;
  for (const auto& p : points) {
    if (!on_curve(c, p)) {
      throw std::invalid_argument("point not on the curve");
    }
    auto ord = torsion_order(c, p);
    if (!ord) throw NotTorsion("point has infinite order");
    mpz_lcm_ui(n.get_mpz_t(), n.get_mpz_t(), *ord);
  }
  return n.get_ui();
}

std::vector<Int> compute_T1(const Curve& c, const RationalPoint& q,
                            const std::vector<RationalPoint>& points) {
  if (!on_curve(c, q)) {
    throw std::invalid_argument("base point not on the curve");
  }
  ProjectiveTriple tq = primitive_triple(q);
  std::vector<Int> out;
  for (const auto& m : points) {
    if (!on_curve(c, m)) {
      throw std::invalid_argument("point not on the curve");
    }
    if (m == q) {
      throw std::invalid_argument("coincident points have no meeting locus");
    }
    ProjectiveTriple tm = primitive_triple(m);
    Int m1 = tq.X * tm.Y - tq.Y * tm.X;
    Int m2 = tq.X * tm.Z - tq.Z * tm.X;
    Int m3 = tq.Y * tm.Z - tq.Z * tm.Y;
    Int g;
    mpz_gcd(g.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m3.get_mpz_t());
    if (g == 0) {
      throw std::logic_error("distinct points with all minors zero");
    }
    if (g > 1) {
      for (auto& p : num::prime_divisors(g)) out.push_back(p);
    }
  }
  return sorted_unique(std::move(out));
}

PlaceSetT assemble_T(const Curve& c, const RationalPoint& q,
                     const PunctureSet& m, const std::vector<Int>& s_finite) {
  PlaceSetT t;
  for (const auto& p : s_finite) {
    if (!num::is_prime(p)) {
      throw std::invalid_argument("S must consist of primes: " + p.get_str());
    }
  }
  t.S_finite = sorted_unique(s_finite);
  t.bad = c.bad_primes();
  t.T1 = compute_T1(c, q, m.points);
  std::vector<Int> all = t.S_finite;
  all.insert(all.end(), t.bad.begin(), t.bad.end());
  all.insert(all.end(), t.T1.begin(), t.T1.end());
  t.all = sorted_unique(std::move(all));
  return t;
}

Int choose_v0(const Curve& c, const RationalPoint& q,
              const std::vector<TIntegralPoint>& integral_points,
              const std::vector<Int>& T, const Int& scan_limit) {
  for (Int p = 3; p <= scan_limit;
       mpz_nextprime(p.get_mpz_t(), p.get_mpz_t())) {
    if (member(T, p) || c.is_bad(p)) continue;
    ModPoint rq = reduce_point(c, q, p, 1);
    bool ok = true;
    for (const auto& ip : integral_points) {
      if (ip.point == q) continue;
      if (proj_congruent(rq, reduce_point(c, ip.point, p, 1), 1)) {
        ok = false;
        break;
      }
    }
    if (ok) return p;
  }
  throw NoAdmissiblePrime("no admissible place below " + scan_limit.get_str());
}

Int compute_a(unsigned long n, const Int& N, const Int& q) {
  if (n < 1 || N < 1) {
    throw std::invalid_argument("torsion lcm and group order must be positive");
  }
  if (q < 3 || q % 2 == 0 || !num::is_prime(q)) {
    throw std::invalid_argument("place must be an odd prime");
  }
  Int t = Int(n) * N;
  Int a = t + 1;
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
  if (g != 1) a = (q - 1) * t + 1;
  Int m = q * t;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (g != 1) {
    throw std::logic_error("progression residue not coprime to the modulus");
  }
  return a;
}

std::vector<Int> dirichlet_primes(const Int& a, const Int& modulus,
                                  unsigned count) {
  if (modulus < 1 || a < 1) {
    throw std::invalid_argument("residue and modulus must be positive");
  }
  if (count < 1) throw std::invalid_argument("need at least one sample");
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), modulus.get_mpz_t());
  if (g != 1) {
    throw InvalidProgression("residue " + a.get_str() +
                             " shares a factor with modulus " +
                             modulus.get_str());
  }
  std::vector<Int> out;
  for (Int l = a; out.size() < count; l += modulus) {
    if (l >= 2 && num::is_prime(l)) out.push_back(l);
  }
  return out;
}

namespace {

std::string progression_violation(const Curve& c, const ProgressionSpec& s,
                                  const PlaceSetT& T) {
  if (s.q != s.v0) return "q must equal the chosen place";
  if (s.v0 < 3 || s.v0 % 2 == 0 || !num::is_prime(s.v0)) {
    return "place must be an odd prime";
  }
  if (c.is_bad(s.v0)) return "place has bad reduction";
  if (member(T.all, s.v0)) return "place lies in the excluded set";
  if (s.n < 1 || s.N < 1) return "torsion lcm and group order must be positive";
  if (s.modulus != s.q * Int(s.n) * s.N) {
    return "modulus must be q * n * N";
  }
  Int g;
  mpz_gcd(g.get_mpz_t(), s.a.get_mpz_t(), s.modulus.get_mpz_t());
  if (g != 1) return "residue shares a factor with the modulus";
  if ((s.a - 1) % (Int(s.n) * s.N) != 0) {
    return "residue must be 1 mod n * N";
  }
  if (s.samples.empty()) return "no sample primes";
  Int prev = 1;
  for (const auto& l : s.samples) {
    if (l <= prev) return "samples must be strictly ascending";
    prev = l;
    if (!num::is_prime(l)) return "sample " + l.get_str() + " is not prime";
    if ((l - s.a) % s.modulus != 0) {
      return "sample " + l.get_str() + " is outside the progression";
    }
  }
  return "";
}

}  // namespace

CheckReport run_checks(const Curve& c, const RationalPoint& q,
                       const PunctureSet& m, const ProgressionSpec& spec,
                       const PlaceSetT& T,
                       const std::vector<TIntegralPoint>& integral_points,
                       const Int& scan_bound, unsigned e_max) {
  if (e_max < 2) {
    throw std::invalid_argument("depth cap must be at least 2");
  }
  if (scan_bound < 0 || !scan_bound.fits_ulong_p() ||
      scan_bound.get_ui() > 100000000) {
    throw std::invalid_argument("scan bound out of range");
  }
  CheckReport rep;
  rep.c5_scanned_to = scan_bound;
  rep.spec_violation = progression_violation(c, spec, T);
  rep.spec_valid = rep.spec_violation.empty();
  if (!rep.spec_valid) return rep;

  const Int& v0 = spec.v0;
  ModPoint rq = reduce_point(c, q, v0, 1);
  rep.reduced_generator = rq.str();

  // c1: every sample sends the generator residue to itself
  rep.c1_generator_residue = true;
  for (const auto& l : spec.samples) {
    ModPoint ml = multiple_mod_prime_power(c, q, l, v0, 1);
    rep.c1_residues.push_back(ml.str());
    if (!proj_congruent(ml, rq, 1)) rep.c1_generator_residue = false;
  }

  // c2: q-valuation of l - 1 matches that of n * N
  rep.val_q_nN = num::valuation(Int(spec.n) * spec.N, spec.q);
  rep.c2_valuation = true;
  for (const auto& l : spec.samples) {
    unsigned long v = num::valuation(l - 1, spec.q);
    rep.c2_valuations.push_back(v);
    if (v != rep.val_q_nN) rep.c2_valuation = false;
  }

  // c3: multiplication by any sample fixes every puncture exactly
  rep.c3_torsion_fixed = true;
  for (const auto& l : spec.samples) {
    for (std::size_t j = 0; j < m.points.size(); ++j) {
      unsigned long k = mpz_fdiv_ui(l.get_mpz_t(), m.orders[j]);
      if (scalar_mul(c, Int(k), m.points[j]) != m.points[j]) {
        rep.c3_torsion_fixed = false;
      }
    }
  }

  // c4: at v0 the generator stays away from every other listed point
  rep.c4_separation = true;
  for (const auto& ip : integral_points) {
    if (ip.point == q) continue;
    if (proj_congruent(rq, reduce_point(c, ip.point, v0, 1), 1)) {
      rep.c4_separation = false;
    }
  }

  // c5: no good prime outside T below the bound sees Q meet a puncture
  std::vector<std::uint32_t> ps =
      num::primes_up_to(static_cast<std::uint32_t>(scan_bound.get_ui()));
  std::vector<std::uint8_t> collision(ps.size(), 0);
  parallel_for(ps.size(), [&](std::size_t i) {
    Int p(static_cast<unsigned long>(ps[i]));
    if (c.is_bad(p) || member(T.all, p)) return;
    ModPoint rqp = reduce_point(c, q, p, 1);
    for (const auto& pt : m.points) {
      if (proj_congruent(rqp, reduce_point(c, pt, p, 1), 1)) {
        collision[i] = 1;
        return;
      }
    }
  });
  rep.c5_avoidance =
      std::find(collision.begin(), collision.end(), 1) == collision.end();

  // c6: agreement depth of l*Q with Q at v0, constant and at least 1
  ModPoint rqe = reduce_point(c, q, v0, e_max);
  rep.c6_depth_stable = true;
  for (const auto& l : spec.samples) {
    ModPoint ml = multiple_mod_prime_power(c, q, l, v0, e_max);
    unsigned r = 0;
    for (unsigned cand = e_max; cand >= 1; --cand) {
      if (proj_congruent(ml, rqe, cand)) {
        r = cand;
        break;
      }
    }
    rep.c6_r_values.push_back(r);
  }
  for (unsigned r : rep.c6_r_values) {
    if (r < 1 || r != rep.c6_r_values.front()) rep.c6_depth_stable = false;
  }
  if (rep.c6_depth_stable) rep.r_star = rep.c6_r_values.front();

  return rep;
}

WitnessCertificate build_witness(const WitnessConfig& cfg) {
  Curve c(cfg.curve_a, cfg.curve_b);
  const RationalPoint& q = cfg.generator;
  if (q.is_infinity()) {
    throw std::invalid_argument("generator must be an affine point");
  }
  if (!on_curve(c, q)) {
    throw std::invalid_argument("generator not on the curve");
  }
  if (torsion_order(c, q)) {
    throw TorsionGenerator("generator has finite order");
  }
  if (cfg.sample_count < 1) {
    throw std::invalid_argument("need at least one sample");
  }
  PunctureSet m = PunctureSet::create(c, cfg.punctures);
  PlaceSetT T = assemble_T(c, q, m, cfg.s_finite);
  std::vector<TIntegralPoint> found =
      enumerate_T_integral(c, m, T.all, cfg.bounds);

  auto at = std::find_if(found.begin(), found.end(),
                         [&](const TIntegralPoint& ip) { return ip.point == q; });
  if (at == found.end()) {
    throw GeneratorOutsideSearch(
        "generator not found by the bounded search; enlarge the box");
  }
  std::rotate(found.begin(), at, at + 1);  // generator first, rest in order

  ProgressionSpec spec;
  spec.v0 = choose_v0(c, q, found, T.all, cfg.v0_scan_limit);
  spec.q = spec.v0;
  spec.N = count_points(c, spec.v0);
  spec.n = m.n;
  spec.a = compute_a(spec.n, spec.N, spec.q);
  spec.modulus = spec.q * Int(spec.n) * spec.N;
  spec.samples = dirichlet_primes(spec.a, spec.modulus, cfg.sample_count);

  CheckReport rep =
      run_checks(c, q, m, spec, T, found, cfg.scan_bound, cfg.e_max);
  if (!rep.all_pass()) {
    std::string which;
    if (!rep.spec_valid) which = rep.spec_violation;
    else if (!rep.c1_generator_residue) which = "generator residue moved";
    else if (!rep.c2_valuation) which = "valuation drifted";
    else if (!rep.c3_torsion_fixed) which = "a puncture moved";
    else if (!rep.c4_separation) which = "generator met a listed point at v0";
    else if (!rep.c5_avoidance) which = "generator met a puncture in the scan";
    else which = "agreement depth unstable";
    throw CheckFailed("congruence checks failed: " + which, rep);
  }

  WitnessCertificate cert;
  cert.curve_a = c.a();
  cert.curve_b = c.b();
  cert.disc = c.disc();
  cert.bad_primes = c.bad_primes();
  cert.real_comps = real_components(c);
  cert.generator = q;
  cert.puncture_points = m.points;
  cert.puncture_orders = m.orders;
  cert.n = m.n;
  cert.T = T;
  cert.bounds = cfg.bounds;
  for (const auto& ip : found) cert.integral_points.push_back(ip.point);
  cert.prog = spec;
  cert.scan_bound = cfg.scan_bound;
  cert.e_max = cfg.e_max;
  cert.report = rep;
  return cert;
}

}  // namespace saw
