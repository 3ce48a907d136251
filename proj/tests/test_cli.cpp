#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code;
  std::string out;
};

Run vdwcalc(const std::string &args) {
  const std::string cmd = std::string("\"") + VDWCALC_PATH + "\" " + args + " 2>/dev/null";
  FILE *p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_file(const std::string &name, const std::string &content) {
  const std::string path = std::string(P_tmpdir) + "/vdwcalc_test_" + name;
  std::ofstream(path) << content;
  return path;
}

} // namespace

TEST_CASE("limits prints the closed-form ratios and both thresholds") {
  const auto r = vdwcalc("limits");
  CHECK(r.code == 0);
  CHECK(r.out.find("1.73913") != std::string::npos);
  CHECK(r.out.find("2.260869") != std::string::npos);
  CHECK(r.out.find("0.666666") != std::string::npos);
  CHECK(r.out.find("4.895") != std::string::npos);
  CHECK(r.out.find("14.82") != std::string::npos);
  const auto p = vdwcalc("limits --case threshold-vertical-permeable");
  CHECK(p.code == 0);
  CHECK(p.out.find("14.82") != std::string::npos);
  CHECK(vdwcalc("limits --case nonretarded-parallel --plate permeable").out.find("3.33333") != std::string::npos);
}

TEST_CASE("free-space sweep as JSON") {
  const auto r = vdwcalc("free-space --points 4 --linear --format json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("kind") == "free-space");
  CHECK(j.at("rows").size() == 4);
  CHECK(j.at("config").at("sweep").at("scale") == "linear");
}

TEST_CASE("configuration file, command-line overrides and --print-config") {
  const auto cfg = temp_file("cfg.json", R"({"sweep":{"from":0.01,"to":1,"points":3},"rel_tol":1e-5})");
  const auto r = vdwcalc("free-space --config " + cfg + " --points 5 --print-config");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("sweep").at("points") == 5);
  CHECK(j.at("sweep").at("from") == 0.01);
  CHECK(j.at("rel_tol") == 1e-5);

  // Re-running from the printed configuration reproduces the output.
  const auto eff = temp_file("eff.json", r.out);
  CHECK(vdwcalc("free-space --config " + eff).out == vdwcalc("free-space --config " + cfg + " --points 5").out);

  const auto out = std::string(P_tmpdir) + "/vdwcalc_test_out.csv";
  CHECK(vdwcalc("free-space --config " + cfg + " --output " + out).code == 0);
  std::stringstream written;
  written << std::ifstream(out).rdbuf();
  CHECK(written.str().rfind("# vdwcalc free-space", 0) == 0);
}

TEST_CASE("exit code 1 for configuration errors") {
  CHECK(vdwcalc("free-space --config " + temp_file("bad.json", R"({"sweep":{"pionts":3}})")).code == 1);
  CHECK(vdwcalc("free-space --config " + temp_file("bad2.json", "{")).code == 1);
  CHECK(vdwcalc("free-space --rel-tol 5").code == 1);
  CHECK(vdwcalc("free-space --log --linear").code == 1);
  CHECK(vdwcalc("half-space --format xml").code == 1);
  CHECK(vdwcalc("no-such-command").code == 1);
  CHECK(vdwcalc("validate --only AC99").code == 1);
  CHECK(vdwcalc("validate --rel-tol 0").code == 1);
}

TEST_CASE("exit code 2 when rows fail numerically") {
  const auto r = vdwcalc("limits --case nonretarded-medium --points 3");
  CHECK(r.code == 2);
  CHECK(r.out.find("nonretarded form needs") != std::string::npos);
  CHECK(r.out.find(",ok\n") != std::string::npos);
}

TEST_CASE("validate: success, listing and an injected fault") {
  const auto ok = vdwcalc("validate --only AC6 AC12");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("2/2 checks passed") != std::string::npos);
  const auto list = vdwcalc("validate --list");
  CHECK(list.code == 0);
  CHECK(list.out.find("AC12") != std::string::npos);
  const auto bad = vdwcalc("validate --only AC12 --inject-fault flip-u2-sign");
  CHECK(bad.code == 3);
  CHECK(bad.out.find("[FAIL] AC12") != std::string::npos);
}
