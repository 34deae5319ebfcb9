#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(TWISTVN_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("analyze: coprime monomials") {
  const std::string report = "/tmp/twistvn_report_23.json";
  const auto r = run_cli("analyze --b1 power:2 --b2 power:3 --seed 5 --json " + report);
  CHECK(r.exit_code == 0);
  const json j = json::parse(slurp(report));
  CHECK(j["dimension"] == 7);
  CHECK(j["abelian"] == true);
  CHECK(j["n_matrix"][0][0] == 2);
  CHECK(j["n_matrix"][0][1] == 1);
  CHECK(j["n_matrix"][1][1] == 3);
  CHECK(j["method_agreement"]["boundary_vs_interior"] == true);
  CHECK(j["method_agreement"]["table_vs_connectedness"] == true);
  CHECK(j["tool_version"].is_string());
  CHECK(j["seed"] == 5);
  CHECK(!j.contains("witness"));
}

TEST_CASE("analyze: diagonal and non-abelian cases") {
  const std::string report = "/tmp/twistvn_report_11.json";
  auto r = run_cli("analyze --b1 power:1 --b2 power:1 --seed 5 --json " + report);
  CHECK(r.exit_code == 0);
  json j = json::parse(slurp(report));
  CHECK(j["dimension"] == 2);
  CHECK(j["abelian"] == true);

  const std::string report24 = "/tmp/twistvn_report_24.json";
  r = run_cli("analyze --b1 power:2 --b2 power:4 --seed 5 --json " + report24);
  CHECK(r.exit_code == 0);
  j = json::parse(slurp(report24));
  CHECK(j["dimension"] == 12);
  CHECK(j["abelian"] == false);
  CHECK(j.contains("witness"));
}

TEST_CASE("reports are byte-identical for a fixed seed and across conventions") {
  const std::string a = "/tmp/twistvn_det_a.json", b = "/tmp/twistvn_det_b.json",
                    c = "/tmp/twistvn_det_c.json";
  CHECK(run_cli("analyze --b1 power:2 --b2 power:3 --seed 9 --json " + a).exit_code == 0);
  CHECK(run_cli("analyze --b1 power:2 --b2 power:3 --seed 9 --json " + b).exit_code == 0);
  CHECK(run_cli("analyze --b1 power:2 --b2 power:3 --seed 9 --convention elementary --json " + c)
            .exit_code == 0);
  const auto sa = slurp(a);
  CHECK(sa == slurp(b));
  CHECK(sa == slurp(c));
  CHECK(!sa.empty());
}

TEST_CASE("TWISTVN_SEED is the seed fallback") {
  const std::string a = "/tmp/twistvn_env_a.json", b = "/tmp/twistvn_env_b.json";
  CHECK(run_cli("analyze --b1 power:2 --b2 power:2 --seed 777 --json " + a).exit_code == 0);
  const auto r = run_cli("analyze --b1 power:2 --b2 power:2 --json " + b + " ");
  // rerun with the environment variable set
  const std::string cmd = "TWISTVN_SEED=777 " + std::string(TWISTVN_CLI_PATH) +
                          " analyze --b1 power:2 --b2 power:2 --json " + b + " >/dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("spec files: zeros/phase and power shorthand") {
  write_file("/tmp/twistvn_b1.json", R"({"zeros": [[0.5, 0.0]], "phase": 0.0})");
  write_file("/tmp/twistvn_b2.json", R"({"power": 3})");
  const std::string report = "/tmp/twistvn_report_files.json";
  const auto r = run_cli("analyze --b1 /tmp/twistvn_b1.json --b2 /tmp/twistvn_b2.json --seed 5 "
                         "--json " +
                         report);
  CHECK(r.exit_code == 0);
  const json j = json::parse(slurp(report));
  CHECK(j["n_matrix"][0][0] == 1);
  CHECK(j["n_matrix"][1][1] == 3);
  CHECK(j["dimension"] == 4);  // 1*3 + 1
}

TEST_CASE("generic equal-order pair: boundary disagreement is exit code 2") {
  write_file("/tmp/twistvn_g1.json",
             R"({"zeros": [[0.3, 0.1], [-0.2, 0.25]], "phase": 0.0})");
  write_file("/tmp/twistvn_g2.json",
             R"({"zeros": [[0.15, -0.3], [-0.35, -0.1]], "phase": 0.5})");
  const std::string report = "/tmp/twistvn_report_generic.json";
  const auto r = run_cli("analyze --b1 /tmp/twistvn_g1.json --b2 /tmp/twistvn_g2.json --seed 5 "
                         "--json " +
                         report);
  CHECK(r.exit_code == 2);
  const json j = json::parse(slurp(report));
  CHECK(j["method_agreement"]["boundary_vs_interior"] == false);
  CHECK(j["n_matrix"][0][1] == 1);
  CHECK(j["abelian"] == true);
}

TEST_CASE("malformed specs are rejected with a diagnostic") {
  write_file("/tmp/twistvn_bad.json", R"({"zeros": [[0.5]], "phase": 0.0})");
  auto r = run_cli("analyze --b1 /tmp/twistvn_bad.json --b2 power:2 --seed 5");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("zeros[0]") != std::string::npos);

  write_file("/tmp/twistvn_bad2.json", "{not json");
  r = run_cli("analyze --b1 /tmp/twistvn_bad2.json --b2 power:2 --seed 5");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("malformed") != std::string::npos);
}

TEST_CASE("gcd-law subcommand") {
  const auto r = run_cli("gcd-law --max 3 --seed 5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("all entries match gcd") != std::string::npos);
}

TEST_CASE("witness subcommand") {
  auto r = run_cli("witness --orders 2,3,5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("compositions differ") != std::string::npos);

  r = run_cli("witness --orders 1,2");
  CHECK(r.exit_code == 1);
}

TEST_CASE("operator-check subcommand") {
  const std::string report = "/tmp/twistvn_opcheck.json";
  const auto r = run_cli("operator-check --k 1 --l 1 --trunc 8 --json " + report);
  CHECK(r.exit_code == 0);
  const json j = json::parse(slurp(report));
  CHECK(j["dim"] == 2);
  CHECK(j["expected_dim"] == 2);
  CHECK(j["match"] == true);
  CHECK(j["abelian"] == true);
}
