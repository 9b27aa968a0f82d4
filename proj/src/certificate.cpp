#include "saw/certificate.hpp"

#include <algorithm>
#include <initializer_list>
#include <memory>
#include <set>

#include "json.hpp"
#include "saw/text.hpp"

namespace saw {

namespace {

using Json = nlohmann::ordered_json;

Json int_list(const std::vector<Int>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(format_int(x));
  return a;
}

Json point_list(const std::vector<RationalPoint>& v) {
  Json a = Json::array();
  for (const auto& p : v) a.push_back(format_point(p));
  return a;
}

[[noreturn]] void malformed(const std::string& where, const std::string& what) {
  throw MalformedCertificate("malformed certificate at " + where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) malformed(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) malformed(path, std::string("missing key '") + key + "'");
  return *it;
}

void exact_keys(const Json& j, std::initializer_list<const char*> keys,
                const std::string& path) {
  if (!j.is_object()) malformed(path, "expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      malformed(path, "unexpected key '" + it.key() + "'");
    }
  }
}

std::string get_string(const Json& j, const char* key,
                       const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_string()) malformed(path + "." + key, "expected a string");
  return v.get<std::string>();
}

bool get_bool(const Json& j, const char* key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_boolean()) malformed(path + "." + key, "expected a boolean");
  return v.get<bool>();
}

Int get_int(const Json& j, const char* key, const std::string& path) {
  std::string s = get_string(j, key, path);
  try {
    return parse_int(s);
  } catch (const std::invalid_argument& e) {
    malformed(path + "." + key, e.what());
  }
}

unsigned long get_ulong(const Json& j, const char* key,
                        const std::string& path) {
  Int v = get_int(j, key, path);
  if (v < 0 || !v.fits_ulong_p()) {
    malformed(path + "." + key, "out of range");
  }
  return v.get_ui();
}

std::vector<Int> get_int_list(const Json& j, const char* key,
                              const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_array()) malformed(path + "." + key, "expected an array");
  std::vector<Int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Json& e = v[i];
    std::string where = path + "." + key + "[" + std::to_string(i) + "]";
    if (!e.is_string()) malformed(where, "expected a string");
    try {
      out.push_back(parse_int(e.get<std::string>()));
    } catch (const std::invalid_argument& err) {
      malformed(where, err.what());
    }
  }
  return out;
}

std::vector<std::string> get_string_list(const Json& j, const char* key,
                                         const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_array()) malformed(path + "." + key, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) {
      malformed(path + "." + key + "[" + std::to_string(i) + "]",
                "expected a string");
    }
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

RationalPoint point_at(const std::string& s, const std::string& where) {
  try {
    return parse_point(s);
  } catch (const std::invalid_argument& e) {
    malformed(where, e.what());
  }
}

}  // namespace

std::string serialize(const WitnessCertificate& c) {
  Json j;
  j["version"] = c.version;
  j["curve"] = Json{{"a", format_int(c.curve_a)},
                    {"b", format_int(c.curve_b)},
                    {"disc", format_int(c.disc)},
                    {"bad_primes", int_list(c.bad_primes)}};
  j["real_components"] = std::to_string(c.real_comps);
  j["generator"] = format_point(c.generator);
  Json punct = Json::array();
  for (std::size_t i = 0; i < c.puncture_points.size(); ++i) {
    punct.push_back(Json{{"point", format_point(c.puncture_points[i])},
                         {"order", std::to_string(c.puncture_orders[i])}});
  }
  j["punctures"] = punct;
  j["n"] = std::to_string(c.n);
  j["T"] = Json{{"S_finite", int_list(c.T.S_finite)},
                {"bad", int_list(c.T.bad)},
                {"T1", int_list(c.T.T1)},
                {"T2", int_list(c.t2)},
                {"T3", int_list(c.t3)},
                {"note", c.t2_t3_note},
                {"all", int_list(c.T.all)}};
  j["search_bounds"] =
      Json{{"max_denominator", format_int(c.bounds.max_denominator)},
           {"max_numerator_abs", format_int(c.bounds.max_numerator_abs)}};
  j["integral_points"] = point_list(c.integral_points);
  j["progression"] = Json{{"v0", format_int(c.prog.v0)},
                          {"q", format_int(c.prog.q)},
                          {"N", format_int(c.prog.N)},
                          {"a", format_int(c.prog.a)},
                          {"modulus", format_int(c.prog.modulus)},
                          {"samples", int_list(c.prog.samples)}};
  j["scan_bound"] = format_int(c.scan_bound);
  j["e_max"] = std::to_string(c.e_max);

  Json r_values = Json::array();
  for (unsigned r : c.report.c6_r_values) r_values.push_back(std::to_string(r));
  Json valuations = Json::array();
  for (unsigned long v : c.report.c2_valuations) {
    valuations.push_back(std::to_string(v));
  }
  Json residues = Json::array();
  for (const auto& s : c.report.c1_residues) residues.push_back(s);
  j["checks"] = Json{
      {"progression_valid", c.report.spec_valid},
      {"c1_generator_residue",
       Json{{"pass", c.report.c1_generator_residue},
            {"generator_mod_v0", c.report.reduced_generator},
            {"multiples_mod_v0", residues}}},
      {"c2_valuation", Json{{"pass", c.report.c2_valuation},
                            {"val_q_nN", std::to_string(c.report.val_q_nN)},
                            {"sample_valuations", valuations}}},
      {"c3_torsion_fixed", Json{{"pass", c.report.c3_torsion_fixed}}},
      {"c4_separation", Json{{"pass", c.report.c4_separation}}},
      {"c5_avoidance", Json{{"pass", c.report.c5_avoidance},
                            {"scanned_to", format_int(c.report.c5_scanned_to)}}},
      {"c6_depth_stability",
       Json{{"pass", c.report.c6_depth_stable},
            {"r_values", r_values},
            {"r_star", std::to_string(c.report.r_star)}}},
      {"all_pass", c.report.all_pass()}};
  j["completeness_caveat"] = c.caveat;
  return j.dump(2) + "\n";
}

WitnessCertificate parse(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw MalformedCertificate(std::string("not valid JSON: ") + e.what());
  }
  exact_keys(j,
             {"version", "curve", "real_components", "generator", "punctures",
              "n", "T", "search_bounds", "integral_points", "progression",
              "scan_bound", "e_max", "checks", "completeness_caveat"},
             "$");
  WitnessCertificate c;
  c.version = get_string(j, "version", "$");

  const Json& curve = field(j, "curve", "$");
  exact_keys(curve, {"a", "b", "disc", "bad_primes"}, "curve");
  c.curve_a = get_int(curve, "a", "curve");
  c.curve_b = get_int(curve, "b", "curve");
  c.disc = get_int(curve, "disc", "curve");
  c.bad_primes = get_int_list(curve, "bad_primes", "curve");

  Int rc = get_int(j, "real_components", "$");
  if (rc < 1 || rc > 2) malformed("real_components", "must be 1 or 2");
  c.real_comps = static_cast<int>(rc.get_ui());

  c.generator = point_at(get_string(j, "generator", "$"), "generator");

  const Json& punct = field(j, "punctures", "$");
  if (!punct.is_array() || punct.empty()) {
    malformed("punctures", "expected a non-empty array");
  }
  for (std::size_t i = 0; i < punct.size(); ++i) {
    std::string where = "punctures[" + std::to_string(i) + "]";
    exact_keys(punct[i], {"point", "order"}, where);
    c.puncture_points.push_back(
        point_at(get_string(punct[i], "point", where), where));
    unsigned long ord = get_ulong(punct[i], "order", where);
    if (ord < 1 || ord > 12) malformed(where + ".order", "out of range");
    c.puncture_orders.push_back(static_cast<unsigned>(ord));
  }

  c.n = get_ulong(j, "n", "$");

  const Json& T = field(j, "T", "$");
  exact_keys(T, {"S_finite", "bad", "T1", "T2", "T3", "note", "all"}, "T");
  c.T.S_finite = get_int_list(T, "S_finite", "T");
  c.T.bad = get_int_list(T, "bad", "T");
  c.T.T1 = get_int_list(T, "T1", "T");
  c.t2 = get_int_list(T, "T2", "T");
  c.t3 = get_int_list(T, "T3", "T");
  c.t2_t3_note = get_string(T, "note", "T");
  c.T.all = get_int_list(T, "all", "T");

  const Json& sb = field(j, "search_bounds", "$");
  exact_keys(sb, {"max_denominator", "max_numerator_abs"}, "search_bounds");
  c.bounds.max_denominator = get_int(sb, "max_denominator", "search_bounds");
  c.bounds.max_numerator_abs =
      get_int(sb, "max_numerator_abs", "search_bounds");

  auto ips = get_string_list(j, "integral_points", "$");
  for (std::size_t i = 0; i < ips.size(); ++i) {
    c.integral_points.push_back(
        point_at(ips[i], "integral_points[" + std::to_string(i) + "]"));
  }

  const Json& prog = field(j, "progression", "$");
  exact_keys(prog, {"v0", "q", "N", "a", "modulus", "samples"}, "progression");
  c.prog.v0 = get_int(prog, "v0", "progression");
  c.prog.q = get_int(prog, "q", "progression");
  c.prog.N = get_int(prog, "N", "progression");
  c.prog.n = c.n;
  c.prog.a = get_int(prog, "a", "progression");
  c.prog.modulus = get_int(prog, "modulus", "progression");
  c.prog.samples = get_int_list(prog, "samples", "progression");
  if (c.prog.samples.empty()) {
    malformed("progression.samples", "expected at least one sample");
  }

  c.scan_bound = get_int(j, "scan_bound", "$");
  unsigned long emax = get_ulong(j, "e_max", "$");
  if (emax < 1 || emax > 64) malformed("e_max", "out of range");
  c.e_max = static_cast<unsigned>(emax);

  const Json& checks = field(j, "checks", "$");
  exact_keys(checks,
             {"progression_valid", "c1_generator_residue", "c2_valuation",
              "c3_torsion_fixed", "c4_separation", "c5_avoidance",
              "c6_depth_stability", "all_pass"},
             "checks");
  c.report.spec_valid = get_bool(checks, "progression_valid", "checks");

  const Json& c1 = field(checks, "c1_generator_residue", "checks");
  exact_keys(c1, {"pass", "generator_mod_v0", "multiples_mod_v0"},
             "checks.c1_generator_residue");
  c.report.c1_generator_residue =
      get_bool(c1, "pass", "checks.c1_generator_residue");
  c.report.reduced_generator =
      get_string(c1, "generator_mod_v0", "checks.c1_generator_residue");
  c.report.c1_residues =
      get_string_list(c1, "multiples_mod_v0", "checks.c1_generator_residue");

  const Json& c2 = field(checks, "c2_valuation", "checks");
  exact_keys(c2, {"pass", "val_q_nN", "sample_valuations"},
             "checks.c2_valuation");
  c.report.c2_valuation = get_bool(c2, "pass", "checks.c2_valuation");
  c.report.val_q_nN = get_ulong(c2, "val_q_nN", "checks.c2_valuation");
  for (const auto& v :
       get_int_list(c2, "sample_valuations", "checks.c2_valuation")) {
    if (v < 0 || !v.fits_ulong_p()) {
      malformed("checks.c2_valuation.sample_valuations", "out of range");
    }
    c.report.c2_valuations.push_back(v.get_ui());
  }

  const Json& c3 = field(checks, "c3_torsion_fixed", "checks");
  exact_keys(c3, {"pass"}, "checks.c3_torsion_fixed");
  c.report.c3_torsion_fixed = get_bool(c3, "pass", "checks.c3_torsion_fixed");

  const Json& c4 = field(checks, "c4_separation", "checks");
  exact_keys(c4, {"pass"}, "checks.c4_separation");
  c.report.c4_separation = get_bool(c4, "pass", "checks.c4_separation");

  const Json& c5 = field(checks, "c5_avoidance", "checks");
  exact_keys(c5, {"pass", "scanned_to"}, "checks.c5_avoidance");
  c.report.c5_avoidance = get_bool(c5, "pass", "checks.c5_avoidance");
  c.report.c5_scanned_to = get_int(c5, "scanned_to", "checks.c5_avoidance");

  const Json& c6 = field(checks, "c6_depth_stability", "checks");
  exact_keys(c6, {"pass", "r_values", "r_star"}, "checks.c6_depth_stability");
  c.report.c6_depth_stable = get_bool(c6, "pass", "checks.c6_depth_stability");
  for (const auto& v :
       get_int_list(c6, "r_values", "checks.c6_depth_stability")) {
    if (v < 0 || v > 64) {
      malformed("checks.c6_depth_stability.r_values", "out of range");
    }
    c.report.c6_r_values.push_back(static_cast<unsigned>(v.get_ui()));
  }
  unsigned long rs = get_ulong(c6, "r_star", "checks.c6_depth_stability");
  if (rs > 64) malformed("checks.c6_depth_stability.r_star", "out of range");
  c.report.r_star = static_cast<unsigned>(rs);

  bool all = get_bool(checks, "all_pass", "checks");
  if (all != c.report.all_pass()) {
    malformed("checks.all_pass", "inconsistent with the individual flags");
  }

  c.caveat = get_string(j, "completeness_caveat", "$");
  return c;
}

namespace {

VerifyResult reject(std::string code, std::string detail) {
  return {false, std::move(code), std::move(detail)};
}

}  // namespace

VerifyResult verify(const WitnessCertificate& c) {
  if (c.version != kCertificateVersion) {
    return reject("WRONG_VERSION", "expected " + std::string(kCertificateVersion));
  }
  if (c.e_max < 2) return reject("BAD_PARAMETERS", "depth cap below 2");
  if (c.scan_bound < 0 || !c.scan_bound.fits_ulong_p() ||
      c.scan_bound.get_ui() > 100000000) {
    return reject("BAD_PARAMETERS", "scan bound out of range");
  }
  if (c.prog.v0 > 10000000) {
    return reject("BAD_PARAMETERS", "place too large to re-derive");
  }

  // curve data
  std::unique_ptr<Curve> curve;
  try {
    curve = std::make_unique<Curve>(c.curve_a, c.curve_b);
  } catch (const SingularCurve& e) {
    return reject("SINGULAR_CURVE", e.what());
  }
  if (curve->disc() != c.disc) {
    return reject("WRONG_DISC", "recorded " + format_int(c.disc) +
                                    ", recomputed " + format_int(curve->disc()));
  }
  if (curve->bad_primes() != c.bad_primes) {
    return reject("WRONG_BAD_PRIMES", "recomputed set differs");
  }
  if (real_components(*curve) != c.real_comps) {
    return reject("WRONG_REAL_COMPONENTS", "recorded " +
                                               std::to_string(c.real_comps));
  }

  // generator
  if (c.generator.is_infinity() || !on_curve(*curve, c.generator)) {
    return reject("GENERATOR_NOT_ON_CURVE", format_point(c.generator));
  }
  if (torsion_order(*curve, c.generator)) {
    return reject("GENERATOR_TORSION", "generator has finite order");
  }

  // punctures and n
  PunctureSet m;
  try {
    m = PunctureSet::create(*curve, c.puncture_points);
  } catch (const NotTorsion& e) {
    return reject("NOT_TORSION", e.what());
  } catch (const std::invalid_argument& e) {
    return reject("PUNCTURE_INVALID", e.what());
  }
  if (m.orders != c.puncture_orders) {
    return reject("WRONG_ORDERS", "recorded orders differ from recomputed");
  }
  if (m.n != c.n) {
    return reject("WRONG_TORSION_LCM", "recorded " + std::to_string(c.n) +
                                           ", recomputed " +
                                           std::to_string(m.n));
  }

  // the excluded place set
  PlaceSetT T;
  try {
    T = assemble_T(*curve, c.generator, m, c.T.S_finite);
  } catch (const std::invalid_argument& e) {
    return reject("WRONG_T", e.what());
  }
  if (T.T1 != c.T.T1) {
    return reject("T1_MISMATCH", "recorded meeting primes differ");
  }
  if (T.S_finite != c.T.S_finite) {
    return reject("WRONG_T", "S_finite not sorted or not deduplicated");
  }
  if (T.bad != c.T.bad) return reject("WRONG_T", "bad component differs");
  if (T.all != c.T.all) return reject("WRONG_T", "union differs");
  if (!c.t2.empty() || !c.t3.empty()) {
    return reject("WRONG_T", "T2 and T3 must be empty for this family");
  }
  if (c.t2_t3_note != kEmptyTailNote) {
    return reject("WRONG_T", "unexpected note text");
  }

  // bounded integral search
  std::vector<TIntegralPoint> found;
  try {
    found = enumerate_T_integral(*curve, m, T.all, c.bounds);
  } catch (const std::invalid_argument& e) {
    return reject("BAD_PARAMETERS", e.what());
  }
  auto at = std::find_if(found.begin(), found.end(), [&](const auto& ip) {
    return ip.point == c.generator;
  });
  if (at == found.end()) {
    return reject("WRONG_INTEGRAL_LIST",
                  "generator not found by the bounded search");
  }
  std::rotate(found.begin(), at, at + 1);
  if (found.size() != c.integral_points.size()) {
    return reject("WRONG_INTEGRAL_LIST",
                  "recorded " + std::to_string(c.integral_points.size()) +
                      " points, recomputed " + std::to_string(found.size()));
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (found[i].point != c.integral_points[i]) {
      return reject("WRONG_INTEGRAL_LIST",
                    "entry " + std::to_string(i) + " differs");
    }
  }

  // the place, the count, the progression
  try {
    Int v0 = choose_v0(*curve, c.generator, found, T.all, c.prog.v0);
    if (v0 != c.prog.v0) {
      return reject("V0_INADMISSIBLE",
                    "smallest admissible place is " + format_int(v0));
    }
  } catch (const NoAdmissiblePrime&) {
    return reject("V0_INADMISSIBLE",
                  format_int(c.prog.v0) + " is not admissible");
  }
  if (c.prog.q != c.prog.v0) {
    return reject("PROGRESSION_INVALID", "q must equal v0");
  }
  Int N = count_points(*curve, c.prog.v0);
  if (N != c.prog.N) {
    return reject("WRONG_N", "recorded " + format_int(c.prog.N) +
                                 ", recomputed " + format_int(N));
  }
  Int a = compute_a(c.n, N, c.prog.q);
  if (a != c.prog.a) {
    return reject("WRONG_A", "recorded " + format_int(c.prog.a) +
                                 ", recomputed " + format_int(a));
  }
  Int modulus = c.prog.q * Int(c.n) * N;
  if (modulus != c.prog.modulus) {
    return reject("WRONG_MODULUS", "recorded " + format_int(c.prog.modulus) +
                                       ", recomputed " + format_int(modulus));
  }
  std::vector<Int> samples;
  try {
    samples = dirichlet_primes(a, modulus,
                               static_cast<unsigned>(c.prog.samples.size()));
  } catch (const InvalidProgression& e) {
    return reject("PROGRESSION_INVALID", e.what());
  }
  if (samples != c.prog.samples) {
    return reject("BAD_SAMPLE",
                  "samples are not the first primes of the progression");
  }

  // the recorded verdicts must claim success before we re-check them
  if (!c.report.all_pass()) {
    return reject("REPORT_NOT_PASSING", "recorded checks do not all pass");
  }

  ProgressionSpec spec;
  spec.v0 = c.prog.v0;
  spec.q = c.prog.q;
  spec.N = N;
  spec.n = c.n;
  spec.a = a;
  spec.modulus = modulus;
  spec.samples = samples;
  CheckReport rep;
  try {
    rep = run_checks(*curve, c.generator, m, spec, T, found, c.scan_bound,
                     c.e_max);
  } catch (const std::invalid_argument& e) {
    return reject("BAD_PARAMETERS", e.what());
  }
  if (!rep.spec_valid) return reject("PROGRESSION_INVALID", rep.spec_violation);
  if (!rep.c1_generator_residue) {
    return reject("CHECK_C1", "a sample moved the generator residue");
  }
  if (!rep.c2_valuation) return reject("CHECK_C2", "valuation drifted");
  if (!rep.c3_torsion_fixed) return reject("CHECK_C3", "a puncture moved");
  if (!rep.c4_separation) {
    return reject("CHECK_C4", "generator met a listed point at v0");
  }
  if (!rep.c5_avoidance) {
    return reject("CHECK_C5", "generator met a puncture inside the scan");
  }
  if (!rep.c6_depth_stable) {
    return reject("CHECK_C6", "agreement depth not stable");
  }
  if (rep.r_star != c.report.r_star) {
    return reject("WRONG_R_STAR",
                  "recorded " + std::to_string(c.report.r_star) +
                      ", recomputed " + std::to_string(rep.r_star));
  }
  if (rep.reduced_generator != c.report.reduced_generator ||
      rep.c1_residues != c.report.c1_residues ||
      rep.val_q_nN != c.report.val_q_nN ||
      rep.c2_valuations != c.report.c2_valuations ||
      rep.c5_scanned_to != c.report.c5_scanned_to ||
      c.report.c5_scanned_to != c.scan_bound ||
      rep.c6_r_values != c.report.c6_r_values) {
    return reject("EVIDENCE_MISMATCH",
                  "recorded evidence differs from recomputation");
  }
  if (c.caveat != kCompletenessCaveat) {
    return reject("WRONG_CAVEAT", "caveat text altered");
  }
  return {true, "OK", "certificate verified against full recomputation"};
}

}  // namespace saw
