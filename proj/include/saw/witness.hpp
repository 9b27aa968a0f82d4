#pragma once

#include <string>
#include <vector>

#include "saw/errors.hpp"
#include "saw/integral.hpp"
#include "saw/modular.hpp"

namespace saw {

// The excluded place set T = S_finite ∪ bad ∪ T1. The archimedean place
// is always understood to be excluded and is not listed. The components
// T2 (places where some multiple of the generator meets a puncture over
// an extension) and T3 (places of bad reduction for the punctured model)
// are empty for integral short Weierstrass models with the generator kept
// integral, and are recorded as such.
struct PlaceSetT {
  std::vector<Int> S_finite;  // caller-supplied primes, sorted
  std::vector<Int> bad;       // primes dividing the discriminant, sorted
  std::vector<Int> T1;        // reduction collisions of Q with punctures
  std::vector<Int> all;       // the union, sorted
};

// A target arithmetic progression a mod (q * n * N) together with prime
// samples from it. Invariants: gcd(a, modulus) = 1, modulus = q * n * N,
// a = 1 mod n * N, and every sample is a prime congruent to a.
struct ProgressionSpec {
  Int v0;               // the chosen place
  Int q;                // equals v0
  Int N;                // |E(F_v0)|
  unsigned long n = 1;  // lcm of puncture orders
  Int a;
  Int modulus;
  std::vector<Int> samples;
};

// Outcome of the six congruence checks, with the evidence needed to
// reproduce each verdict.
struct CheckReport {
  bool spec_valid = false;     // progression invariants, validated first
  std::string spec_violation;  // empty when spec_valid

  bool c1_generator_residue = false;  // l*Q = Q mod v0 for every sample
  bool c2_valuation = false;          // val_q(l-1) = val_q(nN) for every sample
  bool c3_torsion_fixed = false;      // l*m = m for every puncture
  bool c4_separation = false;         // Q stays distinct from listed points mod v0
  bool c5_avoidance = false;          // no collision with punctures at scanned good p
  bool c6_depth_stable = false;       // depth r(l) constant and >= 1

  std::string reduced_generator;          // Q mod v0 as "X:Y:Z"
  std::vector<std::string> c1_residues;   // l*Q mod v0 per sample
  unsigned long val_q_nN = 0;
  std::vector<unsigned long> c2_valuations;
  Int c5_scanned_to;                      // inclusive prime scan bound
  std::vector<unsigned> c6_r_values;      // r(l) per sample
  unsigned r_star = 0;                    // the common value when stable

  bool all_pass() const;
};

// Construction failed one of the congruence checks; carries the report.
struct CheckFailed : Error {
  CheckFailed(const std::string& what, CheckReport r)
      : Error(what), report(std::move(r)) {}
  CheckReport report;
};

// lcm of the torsion orders of the given points. NotTorsion when a point
// has infinite order.
unsigned long compute_n(const Curve& c,
                        const std::vector<RationalPoint>& points);

// Primes at which Q meets one of the given points: the prime divisors of
// gcd of the three 2x2 minors of the primitive triples, accumulated over
// the list. For a good prime p this is equivalent to the reductions mod p
// being equal.
std::vector<Int> compute_T1(const Curve& c, const RationalPoint& q,
                            const std::vector<RationalPoint>& points);

PlaceSetT assemble_T(const Curve& c, const RationalPoint& q,
                     const PunctureSet& m, const std::vector<Int>& s_finite);

// Smallest odd prime of good reduction outside T at which Q reduces away
// from every other listed point. NoAdmissiblePrime past scan_limit.
Int choose_v0(const Curve& c, const RationalPoint& q,
              const std::vector<TIntegralPoint>& integral_points,
              const std::vector<Int>& T, const Int& scan_limit);

// The progression residue: nN + 1 when coprime to q, else (q-1)nN + 1.
// The fallback is 2 mod q, so for odd prime q it is always coprime when
// the first branch is not. Both branches are 1 mod nN.
Int compute_a(unsigned long n, const Int& N, const Int& q);

// First `count` primes congruent to a mod modulus, ascending.
// InvalidProgression when gcd(a, modulus) != 1.
std::vector<Int> dirichlet_primes(const Int& a, const Int& modulus,
                                  unsigned count);

CheckReport run_checks(const Curve& c, const RationalPoint& q,
                       const PunctureSet& m, const ProgressionSpec& spec,
                       const PlaceSetT& T,
                       const std::vector<TIntegralPoint>& integral_points,
                       const Int& scan_bound, unsigned e_max);

struct WitnessConfig {
  Int curve_a, curve_b;
  RationalPoint generator = RationalPoint::infinity();
  std::vector<RationalPoint> punctures;
  std::vector<Int> s_finite;
  SearchBounds bounds{12, 10000};
  unsigned sample_count = 8;
  Int scan_bound = 500;
  unsigned e_max = 6;
  Int v0_scan_limit = 10000;
};

struct WitnessCertificate;

// Runs the full pipeline and assembles a certificate; throws (NotTorsion,
// TorsionGenerator, GeneratorOutsideSearch, NoAdmissiblePrime,
// CheckFailed, ...) when any stage rules the input out.
WitnessCertificate build_witness(const WitnessConfig& cfg);

}  // namespace saw
