#pragma once

#include <string>
#include <vector>

#include "saw/witness.hpp"

namespace saw {

inline constexpr char kCertificateVersion[] = "sa-witness/1";

inline constexpr char kEmptyTailNote[] =
    "T2 and T3 are empty for this model family: the generator and the "
    "punctures are integral for the fixed short Weierstrass model and no "
    "base change is performed.";

inline constexpr char kCompletenessCaveat[] =
    "All claims are relative to the recorded bounds: the integral point "
    "list is complete only within the search box, the avoidance scan "
    "covers primes up to the recorded bound only, and progression "
    "behavior is certified only at the listed sample primes.";

// Everything a verifier needs to recompute the construction from scratch.
struct WitnessCertificate {
  std::string version = kCertificateVersion;

  Int curve_a, curve_b;
  Int disc;
  std::vector<Int> bad_primes;
  int real_comps = 1;

  RationalPoint generator = RationalPoint::infinity();
  std::vector<RationalPoint> puncture_points;
  std::vector<unsigned> puncture_orders;
  unsigned long n = 1;

  PlaceSetT T;
  std::vector<Int> t2, t3;  // empty for this model family
  std::string t2_t3_note = kEmptyTailNote;
  SearchBounds bounds{1, 0};
  std::vector<RationalPoint> integral_points;  // generator listed first

  ProgressionSpec prog;
  Int scan_bound;
  unsigned e_max = 2;

  CheckReport report;
  std::string caveat = kCompletenessCaveat;
};

// Canonical text form: a JSON document with fixed key order, every
// integer rendered as a decimal string, two-space indentation, trailing
// newline. Serialization is deterministic byte for byte.
std::string serialize(const WitnessCertificate& c);

// Inverse of serialize up to canonicalization: key order may be permuted
// and numbers may carry leading zeros; re-serialization restores the
// canonical form. Structural problems throw MalformedCertificate with the
// offending location in the message.
WitnessCertificate parse(const std::string& text);

struct VerifyResult {
  bool accepted = false;
  std::string reason;  // stable machine-readable code, "OK" on accept
  std::string detail;  // human-readable elaboration
};

// Recomputes every derived quantity from the primary inputs (curve,
// generator, punctures, S_finite, bounds, sample count, scan bound,
// e_max) and compares against the recorded values, then re-runs the six
// checks. Never trusts a recorded intermediate.
VerifyResult verify(const WitnessCertificate& c);

}  // namespace saw
