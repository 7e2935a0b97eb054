#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path tmp = fs::temp_directory_path() / ("evenset_cli_" + std::to_string(counter++) + ".out");
  std::string cmd = std::string(EVENSET_BIN) + " " + args + " > " + tmp.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  RunResult r;
#ifdef _WIN32
  r.status = rc;
#else
  r.status = WEXITSTATUS(rc);
#endif
  std::ifstream in(tmp);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  fs::remove(tmp);
  return r;
}

fs::path write_temp(const std::string& name, const std::string& content) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

}  // namespace

TEST_CASE("node count subcommand") {
  auto r = run_cli("invariants --node-count --pg 4 --q 0");
  CHECK(r.status == 0);
  CHECK(r.out == "20\n");
}

TEST_CASE("enumeration is deterministic and complete") {
  auto a = run_cli("--json enumerate-type2 --gmax 30");
  auto b = run_cli("--json enumerate-type2 --gmax 30");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  auto arr = nlohmann::json::parse(a.out);
  CHECK(arr.size() == 59);
  for (const auto& rec : arr) CHECK(rec["g"].get<int>() <= 26);
}

TEST_CASE("groebner subcommands on a small ideal file") {
  auto file = write_temp("cli_ideal.txt",
                         "ring p=31991 vars=x,y,z order=grevlex\n"
                         "x^2+y^2\n"
                         "x^2-y^2\n");
  auto gb = run_cli("gb " + file.string());
  CHECK(gb.status == 0);
  CHECK(gb.out == "ring p=31991 vars=x,y,z order=grevlex\ny^2\nx^2\n");

  CHECK(run_cli("member " + file.string() + " --poly y^3").status == 0);
  CHECK(run_cli("member " + file.string() + " --poly y").status == 1);
  CHECK(run_cli("radical " + file.string() + " --poly y").status == 0);
  CHECK(run_cli("radical " + file.string() + " --poly z").status == 1);

  auto rad = run_cli("--json radical " + file.string() + " --poly y --power 5");
  CHECK(rad.status == 0);
  auto j = nlohmann::json::parse(rad.out);
  CHECK(j["radical_member"] == true);
  CHECK(j["power"] == 2);
  fs::remove(file);
}

TEST_CASE("eliminate and hilbert subcommands") {
  auto file = write_temp("cli_elim.txt",
                         "ring p=31991 vars=x,y,z order=grevlex\n"
                         "x-y^2\n"
                         "x-z\n");
  auto e = run_cli("eliminate " + file.string() + " --vars x");
  CHECK(e.status == 0);
  CHECK(e.out == "ring p=31991 vars=y,z order=grevlex\ny^2-z\n");
  fs::remove(file);

  auto cubic = write_temp("cli_cubic.txt",
                          "ring p=101 vars=x,y,z,w order=grevlex\n"
                          "x*z-y^2\n"
                          "x*w-y*z\n"
                          "y*w-z^2\n");
  auto h = run_cli("hilbert " + cubic.string());
  CHECK(h.status == 0);
  CHECK(h.out == "codimension: 2\ndegree: 3\n");
  fs::remove(cubic);
}

TEST_CASE("build-sigma on the bundled fixture") {
  auto r = run_cli(std::string("build-sigma ") + FIXTURES_DIR + "/appendix.surface");
  CHECK(r.status == 0);
  CHECK(r.out.find("ring p=31991") == 0);
}

TEST_CASE("invariant calculators") {
  auto castel = run_cli("invariants --castelnuovo 0,1,1");
  CHECK(castel.status == 0);
  CHECK(castel.out == "pg=5 q=0 K2=8\n");

  auto cover = run_cli("invariants --double-cover 6,0,11,32");
  CHECK(cover.status == 0);
  CHECK(cover.out == "chi=6 K2=22\n");

  auto chow = run_cli("invariants --chow-type 1,1,1 --chow-classes \"1,0;1,0;4,-1\"");
  CHECK(chow.status == 0);
  CHECK(chow.out == "11\n");

  auto budget = run_cli("invariants --c2-budget 26,81");
  CHECK(budget.status == 0);
  CHECK(budget.out == "lhs=748 rhs=748 ok=true\n");
}

TEST_CASE("verification report is byte-deterministic and supports power mode") {
  std::string base = std::string("--json verify ") + FIXTURES_DIR + "/appendix.surface --jobs 6";
  auto a = run_cli(base);
  auto b = run_cli(base);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  auto rep = nlohmann::json::parse(a.out);
  CHECK(rep["charts"].size() == 6);
  CHECK(rep["segre"]["codim"] == 5);
  CHECK(rep["segre"]["degree"] == 32);
  CHECK(rep["expected_nodes"] == 32);
  CHECK(rep["even_set"] == true);
  CHECK(rep["passed"] == true);

  auto p = run_cli(base + " --power 30");
  CHECK(p.status == 0);
  auto prep = nlohmann::json::parse(p.out);
  for (const auto& c : prep["charts"]) CHECK(c["nodal_ok"] == true);

  // chart fan-out does not change the report
  auto serial = run_cli(std::string("--json verify ") + FIXTURES_DIR +
                        "/appendix.surface --jobs 1");
  CHECK(serial.out == a.out);

  // the affine-Hessian route agrees with the projective one on every chart
  auto affine = run_cli(base + " --affine-check");
  CHECK(affine.status == 0);
  CHECK(nlohmann::json::parse(affine.out)["passed"] == true);
}

TEST_CASE("global flags may trail the subcommand") {
  auto r = run_cli("invariants --node-count --pg 6 --q 1 --json");
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["nu"] == 32);
}

TEST_CASE("retry policy and failure exits over small characteristics") {
  std::ifstream fix(std::string(FIXTURES_DIR) + "/appendix.surface");
  std::ostringstream ss;
  ss << fix.rdbuf();
  std::string body = ss.str();
  auto with_prime = [&](const std::string& p) {
    std::string s = body;
    auto pos = s.find("p=31991");
    s.replace(pos, 7, "p=" + p);
    return s;
  };

  // over GF(19) the default weights fail and the seeded retry succeeds
  auto f19 = write_temp("cli_p19.surface", with_prime("19"));
  auto r19 = run_cli("--json verify " + f19.string() + " --jobs 6 --retries 3");
  CHECK(r19.status == 0);
  auto rep = nlohmann::json::parse(r19.out);
  CHECK(rep["passed"] == true);
  CHECK(rep["attempts"].get<int>() > 1);
  CHECK(rep["segre"]["degree"] == 32);
  fs::remove(f19);

  // over GF(3) no weight choice works: verification failure, exit 1
  auto f3 = write_temp("cli_p3.surface", with_prime("3"));
  auto r3 = run_cli("--json verify " + f3.string() + " --jobs 6 --retries 3");
  CHECK(r3.status == 1);
  CHECK(nlohmann::json::parse(r3.out)["passed"] == false);
  fs::remove(f3);

  // GF(7) divides the chart degree 7: the Euler relation fails, exit 2
  auto f7 = write_temp("cli_p7.surface", with_prime("7"));
  auto r7 = run_cli("verify " + f7.string());
  CHECK(r7.status == 2);
  CHECK(r7.out.find("Euler") != std::string::npos);
  fs::remove(f7);
}

TEST_CASE("a power directive in the surface file drives the chart certificates") {
  std::ifstream fix(std::string(FIXTURES_DIR) + "/appendix.surface");
  std::ostringstream ss;
  ss << fix.rdbuf();
  auto file = write_temp("cli_power.surface", ss.str() + "power = 30\n");
  auto r = run_cli("--json verify " + file.string() + " --jobs 6");
  CHECK(r.status == 0);
  auto rep = nlohmann::json::parse(r.out);
  CHECK(rep["passed"] == true);
  fs::remove(file);
}

TEST_CASE("input errors exit with status 2") {
  CHECK(run_cli("gb /nonexistent/path.txt").status == 2);
  auto bad = write_temp("cli_bad.txt", "ring p=31991 vars=x order=grevlex\nx + unknown\n");
  CHECK(run_cli("gb " + bad.string()).status == 2);
  fs::remove(bad);
  auto short_surface = write_temp("cli_short.surface",
                                  "ring p=31991 vars=s,t,x0,x1,x2 order=grevlex\n"
                                  "point = (1,0)\n");
  CHECK(run_cli("verify " + short_surface.string()).status == 2);
  fs::remove(short_surface);
  CHECK(run_cli("no-such-command").status == 2);
}
