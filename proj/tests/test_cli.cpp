// End-to-end checks of the command-line tool: exit codes, file formats and
// byte determinism. The binary path comes from the build system.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "cqsl_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path log = scratch_dir() / "stdout.txt";
  const std::string cmd =
      std::string(CLI_BIN_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(log);
  return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

}  // namespace

TEST_CASE("evolve writes the trajectory and hits the closed form") {
  const fs::path out = scratch_dir() / "traj.csv";
  const RunResult r = run_cli(
      "evolve --channel dephasing --gamma const:2 --theta pi/2 --omega0 0 "
      "--tau 0.5 --steps 1000 --out " + out.string());
  REQUIRE(r.code == 0);
  const std::string csv = slurp(out);
  const auto lines = split(csv, '\n');
  REQUIRE(lines.size() >= 1002);
  CHECK(lines[0] ==
        "t,rho00_re,rho00_im,rho01_re,rho01_im,rho10_re,rho10_im,rho11_re,"
        "rho11_im,gamma_cum");
  const auto last = split(lines[1001], ',');
  REQUIRE(last.size() == 10);
  const double re = std::stod(last[3]);
  const double im = std::stod(last[4]);
  CHECK(std::abs(std::hypot(re, im) - 0.1839397) <= 1e-6);
  CHECK(csv.find("\r") == std::string::npos);
}

TEST_CASE("invalid configuration exits with code 2") {
  CHECK(run_cli("evolve --tau 0").code == 2);
  CHECK(run_cli("evolve --tau 0.5 --steps 3").code == 2);
  CHECK(run_cli("evolve --channel sideways --tau 0.5").code == 2);
  CHECK(run_cli("qsl --gamma linear:1 --tau 0.5").code == 2);
  CHECK(run_cli("figure fig9").code == 2);
  CHECK(run_cli("--not-a-flag").code == 2);
}

TEST_CASE("numerical failure exits with code 3") {
  // Negative rate from a maximally coherent state leaves the state space.
  const RunResult r = run_cli(
      "evolve --channel dephasing --gamma const:-2 --theta pi/2 --tau 0.5 --steps 64");
  CHECK(r.code == 3);
  CHECK(r.out.find("numerical failure") != std::string::npos);
}

TEST_CASE("unitary evolution keeps the population columns frozen") {
  const fs::path out = scratch_dir() / "unitary.csv";
  const RunResult r = run_cli(
      "evolve --channel unitary --omega0 1.5 --theta pi/3 --tau 1 --steps 200 --out " +
      out.string());
  REQUIRE(r.code == 0);
  const auto lines = split(slurp(out), '\n');
  const auto first = split(lines[1], ',');
  for (std::size_t i = 2; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto row = split(lines[i], ',');
    CHECK(std::abs(std::stod(row[1]) - std::stod(first[1])) <= 1e-10);
    CHECK(std::abs(std::stod(row[7]) - std::stod(first[7])) <= 1e-10);
  }
}

TEST_CASE("qsl emits the report schema and a summary line") {
  const fs::path out = scratch_dir() / "report.json";
  const RunResult r = run_cli(
      "qsl --channel dephasing --gamma const:2 --theta pi/2 --omega0 0 --tau 0.5 "
      "--steps 2000 --out " + out.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("tau=", 0) == 0);
  CHECK(r.out.find("tau_csl=") != std::string::npos);
  CHECK(r.out.find("ratio=") != std::string::npos);

  const std::string json = slurp(out);
  for (const char* key : {"\"delta_c\"", "\"path_length\"", "\"avg_speed\"", "\"tau\"",
                          "\"tau_csl\"", "\"ratio\"", "\"vacuous\"", "\"config\"",
                          "\"version\""}) {
    CHECK(json.find(key) != std::string::npos);
  }
  // Saturation point: ratio printed as 1 within 1e-4.
  const auto pos = r.out.find("ratio=");
  const double ratio = std::stod(r.out.substr(pos + 6));
  CHECK(std::abs(ratio - 1.0) <= 1e-4);
}

TEST_CASE("config file values are overridden by flags") {
  const fs::path cfg = scratch_dir() / "run.json";
  {
    std::ofstream f(cfg);
    f << R"({"channel":"dephasing","gamma":"const:2","theta":"pi/3","tau":0.5,"steps":500})";
  }
  const fs::path out_a = scratch_dir() / "a.json";
  const fs::path out_b = scratch_dir() / "b.json";
  REQUIRE(run_cli("qsl --config " + cfg.string() + " --out " + out_a.string()).code == 0);
  REQUIRE(run_cli("qsl --config " + cfg.string() + " --theta pi/2 --out " +
                  out_b.string()).code == 0);
  CHECK(slurp(out_a).find("\"theta\": 1.04") != std::string::npos);
  CHECK(slurp(out_b).find("\"theta\": 1.57") != std::string::npos);
}

TEST_CASE("identical runs are byte-identical") {
  const fs::path out = scratch_dir() / "det.json";
  const std::string args =
      "qsl --channel damping --gamma const:2 --theta pi/4 --tau 0.4 --steps 800 --out " +
      out.string();
  REQUIRE(run_cli(args).code == 0);
  const std::string first = slurp(out);
  fs::remove(out);
  REQUIRE(run_cli(args).code == 0);
  CHECK(first == slurp(out));
  CHECK(!first.empty());
}

TEST_CASE("evolve --format json emits matrix-json nodes") {
  const fs::path out = scratch_dir() / "traj.json";
  const RunResult r = run_cli(
      "evolve --channel damping --gamma const:1 --theta pi/3 --tau 0.2 --steps 16 "
      "--format json --out " + out.string());
  REQUIRE(r.code == 0);
  const std::string json = slurp(out);
  CHECK(json.find("\"nodes\"") != std::string::npos);
  CHECK(json.find("\"entries\"") != std::string::npos);
  CHECK(json.find("\"gamma_cum\"") != std::string::npos);
}

TEST_CASE("figure subcommand writes a sweep") {
  const fs::path out = scratch_dir() / "fig3_left.csv";
  const RunResult r = run_cli("figure fig3_left --out " + out.string());
  REQUIRE(r.code == 0);
  const auto lines = split(slurp(out), '\n');
  REQUIRE(lines.size() >= 91);  // header + 3 thetas x 30 taus
  CHECK(lines[0] == "theta,tau,tau_csl");
}

TEST_CASE("verify oracle suite passes") {
  const RunResult r = run_cli("verify oracle --seed 5");
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
