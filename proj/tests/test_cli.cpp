#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "saw/cli.hpp"

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = saw::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("analyze prints invariants and point facts") {
  auto r = run_cli({"analyze", "--curve", "0,3", "--point", "1,2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("disc: -3888\n") != std::string::npos);
  CHECK(r.out.find("bad_primes: 2 3\n") != std::string::npos);
  CHECK(r.out.find("real_components: 1\n") != std::string::npos);
  CHECK(r.out.find("on_curve: yes\n") != std::string::npos);
  CHECK(r.out.find("order: infinite\n") != std::string::npos);

  auto r2 = run_cli({"analyze", "--curve", "-36,0", "--point", "0,0"});
  CHECK(r2.code == 0);
  CHECK(r2.out.find("real_components: 2\n") != std::string::npos);
  CHECK(r2.out.find("order: 2\n") != std::string::npos);

  auto r3 = run_cli({"analyze", "--curve", "0,3",
                     "--point", "-23/16,-11/64"});
  CHECK(r3.out.find("triple: -92:-11:64\n") != std::string::npos);
}

TEST_CASE("count prints the group order") {
  auto r = run_cli({"count", "--curve", "0,3", "--prime", "5"});
  CHECK(r.code == 0);
  CHECK(r.out == "6\n");
  CHECK(run_cli({"count", "--curve", "-36,0", "--prime", "13"}).out == "20\n");
}

TEST_CASE("integral lists points inside the box") {
  auto r = run_cli({"integral", "--curve", "0,3", "--puncture", "inf",
                    "--T", "2,3", "--bounds", "12,10000"});
  CHECK(r.code == 0);
  CHECK(r.out == "1/1,-2/1\n1/1,2/1\n-23/16,-11/64\n-23/16,11/64\n");
}

TEST_CASE("witness build writes a verifiable certificate") {
  TempFile tmp("saw_cli_test_cert.json");
  auto r = run_cli({"witness", "build", "--curve", "0,3", "--gen", "1,2",
                    "--puncture", "inf", "--samples", "6",
                    "-o", tmp.path});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("v0: 5\n") != std::string::npos);
  CHECK(r.out.find("N: 6\n") != std::string::npos);
  CHECK(r.out.find("a: 7\n") != std::string::npos);
  CHECK(r.out.find("modulus: 30\n") != std::string::npos);
  CHECK(r.out.find("samples: 7 37 67 97 127 157\n") != std::string::npos);
  CHECK(r.out.find("r_star: 1\n") != std::string::npos);

  auto v = run_cli({"witness", "verify", tmp.path});
  CHECK(v.code == 0);
  CHECK(v.out.rfind("ACCEPT:", 0) == 0);

  SUBCASE("tampering is detected") {
    std::string text = slurp(tmp.path);
    auto pos = text.find("\"N\": \"6\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 8, "\"N\": \"7\"");
    TempFile bad("saw_cli_test_tampered.json");
    std::ofstream(bad.path, std::ios::binary) << text;
    auto rv = run_cli({"witness", "verify", bad.path});
    CHECK(rv.code == 1);
    CHECK(rv.out.rfind("REJECT WRONG_N:", 0) == 0);
  }
  SUBCASE("truncated files are a usage error") {
    TempFile bad("saw_cli_test_truncated.json");
    std::ofstream(bad.path, std::ios::binary) << slurp(tmp.path).substr(0, 50);
    auto rv = run_cli({"witness", "verify", bad.path});
    CHECK(rv.code == 2);
  }
}

TEST_CASE("build without an output path streams the certificate") {
  auto r = run_cli({"witness", "build", "--curve", "0,3", "--gen", "1,2",
                    "--puncture", "inf", "--samples", "6"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("{", 0) == 0);
  CHECK(r.out.find("\"version\": \"sa-witness/1\"") != std::string::npos);

  // the same invocation twice yields identical bytes
  auto r2 = run_cli({"witness", "build", "--curve", "0,3", "--gen", "1,2",
                     "--puncture", "inf", "--samples", "6"});
  CHECK(r2.out == r.out);
}

TEST_CASE("failed constructions exit 1, usage problems exit 2") {
  // a torsion generator cannot produce a witness
  auto r1 = run_cli({"witness", "build", "--curve", "-36,0", "--gen", "0,0",
                     "--puncture", "inf"});
  CHECK(r1.code == 1);
  CHECK_FALSE(r1.err.empty());

  CHECK(run_cli({"count", "--curve", "0,0", "--prime", "5"}).code == 2);
  CHECK(run_cli({"count", "--curve", "0,3", "--prime", "6"}).code == 2);
  CHECK(run_cli({"count", "--curve", "0;3", "--prime", "5"}).code == 2);
  CHECK(run_cli({"nonsense"}).code == 2);
  CHECK(run_cli({"analyze"}).code == 2);  // missing required --curve
  CHECK(run_cli({"witness", "verify", "/nonexistent/path.json"}).code == 2);
}

TEST_CASE("help is a success") {
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({"witness", "--help"}).code == 0);
}
