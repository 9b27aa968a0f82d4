#include "saw/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <tuple>

#include "CLI11.hpp"
#include "saw/certificate.hpp"
#include "saw/text.hpp"

namespace saw::cli {

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, ',')) out.push_back(cur);
  return out;
}

std::pair<Int, Int> parse_int_pair(const std::string& s, const char* what) {
  auto parts = split_csv(s);
  if (parts.size() != 2) {
    throw std::invalid_argument(std::string(what) + " must be 'x,y': '" + s +
                                "'");
  }
  return {parse_int(parts[0]), parse_int(parts[1])};
}

std::vector<Int> parse_prime_list(const std::string& s) {
  std::vector<Int> out;
  if (s.empty()) return out;
  for (const auto& part : split_csv(s)) out.push_back(parse_int(part));
  return out;
}

void print_curve(std::ostream& out, const Curve& c) {
  out << "a: " << format_int(c.a()) << "\n";
  out << "b: " << format_int(c.b()) << "\n";
  out << "disc: " << format_int(c.disc()) << "\n";
  out << "bad_primes:";
  for (const auto& p : c.bad_primes()) out << " " << format_int(p);
  out << "\n";
  out << "real_components: " << real_components(c) << "\n";
}

int do_analyze(std::ostream& out, const std::string& curve_s,
               const std::string& point_s) {
  auto [a, b] = parse_int_pair(curve_s, "--curve");
  Curve c(a, b);
  print_curve(out, c);
  if (!point_s.empty()) {
    RationalPoint p = parse_point(point_s);
    out << "point: " << format_point(p) << "\n";
    bool on = on_curve(c, p);
    out << "on_curve: " << (on ? "yes" : "no") << "\n";
    if (on) {
      auto ord = torsion_order(c, p);
      out << "order: " << (ord ? std::to_string(*ord) : "infinite") << "\n";
      ProjectiveTriple t = primitive_triple(p);
      out << "triple: " << format_int(t.X) << ":" << format_int(t.Y) << ":"
          << format_int(t.Z) << "\n";
    }
  }
  return 0;
}

int do_count(std::ostream& out, const std::string& curve_s,
             const std::string& prime_s) {
  auto [a, b] = parse_int_pair(curve_s, "--curve");
  Curve c(a, b);
  out << format_int(count_points(c, parse_int(prime_s))) << "\n";
  return 0;
}

int do_integral(std::ostream& out, const std::string& curve_s,
                const std::vector<std::string>& puncture_s,
                const std::string& t_s, const std::string& bounds_s) {
  auto [a, b] = parse_int_pair(curve_s, "--curve");
  Curve c(a, b);
  std::vector<RationalPoint> punctures;
  for (const auto& s : puncture_s) punctures.push_back(parse_point(s));
  PunctureSet m = PunctureSet::create(c, punctures);
  std::vector<Int> T = parse_prime_list(t_s);
  std::sort(T.begin(), T.end());
  auto [dmax, hmax] = parse_int_pair(bounds_s, "--bounds");
  for (const auto& ip : enumerate_T_integral(c, m, T, {dmax, hmax})) {
    out << format_point(ip.point) << "\n";
  }
  return 0;
}

int do_build(std::ostream& out, const std::string& curve_s,
             const std::string& gen_s,
             const std::vector<std::string>& puncture_s,
             const std::string& s_finite_s, unsigned samples,
             const std::string& scan_s, unsigned emax,
             const std::string& bounds_s, const std::string& v0_limit_s,
             const std::string& out_path) {
  WitnessConfig cfg;
  std::tie(cfg.curve_a, cfg.curve_b) = parse_int_pair(curve_s, "--curve");
  cfg.generator = parse_point(gen_s);
  for (const auto& s : puncture_s) cfg.punctures.push_back(parse_point(s));
  cfg.s_finite = parse_prime_list(s_finite_s);
  cfg.sample_count = samples;
  cfg.scan_bound = parse_int(scan_s);
  cfg.e_max = emax;
  std::tie(cfg.bounds.max_denominator, cfg.bounds.max_numerator_abs) =
      parse_int_pair(bounds_s, "--bounds");
  cfg.v0_scan_limit = parse_int(v0_limit_s);

  WitnessCertificate cert = build_witness(cfg);
  std::string text = serialize(cert);
  if (out_path.empty()) {
    out << text;
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open " + out_path);
  f << text;
  f.close();
  out << "wrote " << out_path << "\n";
  out << "v0: " << format_int(cert.prog.v0) << "\n";
  out << "N: " << format_int(cert.prog.N) << "\n";
  out << "n: " << cert.n << "\n";
  out << "a: " << format_int(cert.prog.a) << "\n";
  out << "modulus: " << format_int(cert.prog.modulus) << "\n";
  out << "samples:";
  for (const auto& l : cert.prog.samples) out << " " << format_int(l);
  out << "\n";
  out << "r_star: " << cert.report.r_star << "\n";
  return 0;
}

int do_verify(std::ostream& out, const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  WitnessCertificate cert = parse(buf.str());
  VerifyResult r = verify(cert);
  if (r.accepted) {
    out << "ACCEPT: " << r.detail << "\n";
    return 0;
  }
  out << "REJECT " << r.reason << ": " << r.detail << "\n";
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"witness certificates for strong-approximation failure on "
               "punctured elliptic curves"};
  app.require_subcommand(1);

  std::string curve_s, point_s, prime_s, gen_s, t_s, s_finite_s;
  std::string bounds_s = "12,10000";
  std::string scan_s = "500";
  std::string v0_limit_s = "10000";
  std::string out_path, cert_path;
  std::vector<std::string> puncture_s;
  unsigned samples = 8, emax = 6;

  auto* analyze =
      app.add_subcommand("analyze", "curve invariants and point facts");
  analyze->add_option("--curve", curve_s, "coefficients a,b")->required();
  analyze->add_option("--point", point_s, "a point 'x,y' or 'inf'");

  auto* count = app.add_subcommand("count", "group order over F_p");
  count->add_option("--curve", curve_s, "coefficients a,b")->required();
  count->add_option("--prime", prime_s, "a good odd prime")->required();

  auto* integral =
      app.add_subcommand("integral", "bounded search for integral points");
  integral->add_option("--curve", curve_s, "coefficients a,b")->required();
  integral
      ->add_option("--puncture", puncture_s,
                   "torsion point to remove; repeatable")
      ->required();
  integral->add_option("--T", t_s, "allowed denominator primes, e.g. 2,3");
  integral->add_option("--bounds", bounds_s,
                       "max denominator d and max |numerator|, as 'd,h'");

  auto* witness = app.add_subcommand("witness", "certificates");
  witness->require_subcommand(1);
  auto* build = witness->add_subcommand("build", "construct a certificate");
  build->add_option("--curve", curve_s, "coefficients a,b")->required();
  build->add_option("--gen", gen_s, "infinite-order point 'x,y'")->required();
  build
      ->add_option("--puncture", puncture_s,
                   "torsion point to remove; repeatable")
      ->required();
  build->add_option("--S", s_finite_s, "extra excluded primes, e.g. 2,3");
  build->add_option("--samples", samples, "number of progression primes");
  build->add_option("--scan", scan_s, "avoidance scan bound");
  build->add_option("--emax", emax, "depth cap for stability");
  build->add_option("--bounds", bounds_s, "search box 'd,h'");
  build->add_option("--v0-limit", v0_limit_s, "place scan limit");
  build->add_option("-o,--out", out_path, "certificate output path");

  auto* vrfy = witness->add_subcommand("verify", "recheck a certificate");
  vrfy->add_option("file", cert_path, "certificate path")->required();

  std::vector<const char*> argv;
  argv.push_back("sa-witness");
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return do_analyze(out, curve_s, point_s);
    if (*count) return do_count(out, curve_s, prime_s);
    if (*integral) return do_integral(out, curve_s, puncture_s, t_s, bounds_s);
    if (*build) {
      return do_build(out, curve_s, gen_s, puncture_s, s_finite_s, samples,
                      scan_s, emax, bounds_s, v0_limit_s, out_path);
    }
    if (*vrfy) return do_verify(out, cert_path);
    err << "no subcommand selected\n";
    return 2;
  } catch (const CheckFailed& e) {
    err << "checks failed: " << e.what() << "\n";
    return 1;
  } catch (const MalformedCertificate& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const TorsionGenerator& e) {
    err << "rejected: " << e.what() << "\n";
    return 1;
  } catch (const NotTorsion& e) {
    err << "rejected: " << e.what() << "\n";
    return 1;
  } catch (const NoAdmissiblePrime& e) {
    err << "rejected: " << e.what() << "\n";
    return 1;
  } catch (const GeneratorOutsideSearch& e) {
    err << "rejected: " << e.what() << "\n";
    return 1;
  } catch (const InvalidProgression& e) {
    err << "rejected: " << e.what() << "\n";
    return 1;
  } catch (const SingularCurve& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const BadPrime& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace saw::cli
