// Command-line front end: evolve qubit channels, emit speed-limit reports,
// reproduce the ratio/figure sweeps and run the verification suites.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cqsl/run.hpp"
#include "cqsl/verify.hpp"

namespace {

struct RawOptions {
  std::string config_file;
  std::optional<std::string> channel, gamma, theta, phase, format, out;
  std::optional<double> omega0, tau, t0;
  std::optional<int> steps;
  std::optional<std::uint64_t> seed;
};

void add_run_options(CLI::App* cmd, RawOptions& raw) {
  cmd->add_option("--config", raw.config_file, "JSON config file; flags override it");
  cmd->add_option("--channel", raw.channel, "dephasing|damping|unitary");
  cmd->add_option("--gamma", raw.gamma, "const:<g> or ohmic:k=<k>,wc=<w>");
  cmd->add_option("--theta", raw.theta, "initial-state angle (decimal or pi/<n>)");
  cmd->add_option("--phase", raw.phase, "initial-state phase (decimal or pi/<n>)");
  cmd->add_option("--omega0", raw.omega0, "free-Hamiltonian frequency");
  cmd->add_option("--tau", raw.tau, "evolution time");
  cmd->add_option("--steps", raw.steps, "grid steps (default 4000 per unit time)");
  cmd->add_option("--t0", raw.t0, "rate time-origin shift");
  cmd->add_option("--out", raw.out, "output path (stdout when omitted)");
  cmd->add_option("--format", raw.format, "csv|json");
  cmd->add_option("--seed", raw.seed, "seed for the verification suites");
}

cqsl::RunConfig resolve_config(const RawOptions& raw) {
  cqsl::RunConfig c;
  if (!raw.config_file.empty()) {
    std::ifstream in(raw.config_file);
    if (!in) throw cqsl::ConfigError("cannot open config file " + raw.config_file);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw cqsl::ConfigError(std::string("config file parse error: ") + e.what());
    }
    c = cqsl::config_from_json(j);
  }
  if (raw.channel) c.channel = cqsl::parse_channel(*raw.channel);
  if (raw.gamma) c.rate = cqsl::parse_rate(*raw.gamma);
  if (raw.theta) c.theta = cqsl::parse_angle(*raw.theta);
  if (raw.phase) c.phase = cqsl::parse_angle(*raw.phase);
  if (raw.omega0) c.omega0 = *raw.omega0;
  if (raw.tau) c.tau = *raw.tau;
  if (raw.steps) c.steps = *raw.steps;
  if (raw.t0) c.t0 = *raw.t0;
  if (raw.out) c.out = *raw.out;
  if (raw.format) c.format = *raw.format;
  if (raw.seed) c.seed = *raw.seed;
  cqsl::validate_config(c);
  return c;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);  // keep LF endings everywhere
  if (!out) throw cqsl::ConfigError("cannot open output file " + path);
  out << text;
}

int cmd_evolve(const RawOptions& raw) {
  const cqsl::RunConfig c = resolve_config(raw);
  const cqsl::Trajectory traj = cqsl::run_trajectory(c);
  write_text(c.out, c.format == "json" ? cqsl::trajectory_json(traj).dump(2) + "\n"
                                       : cqsl::trajectory_csv(traj));
  return 0;
}

int cmd_qsl(const RawOptions& raw) {
  const cqsl::RunConfig c = resolve_config(raw);
  const cqsl::QslReport rep = cqsl::run_qsl(c);
  const std::string text = cqsl::qsl_json(c, rep).dump(2) + "\n";
  write_text(c.out, text);
  auto& summary = c.out.empty() ? std::cerr : std::cout;
  summary << "tau=" << cqsl::to_sig17(rep.tau) << " tau_csl=" << cqsl::to_sig17(rep.tau_csl)
          << " ratio=" << cqsl::to_sig17(rep.ratio) << "\n";
  return 0;
}

int cmd_figure(const std::string& id, const RawOptions& raw) {
  const std::string csv = cqsl::run_figure(id);
  write_text(raw.out.value_or(id + ".csv"), csv);
  return 0;
}

int cmd_verify(const std::string& suite, const RawOptions& raw) {
  const std::uint64_t seed = raw.seed.value_or(1);
  std::vector<cqsl::CheckResult> results;
  if (suite == "oracle" || suite == "all") {
    const auto r = cqsl::oracle_suite(seed);
    results.insert(results.end(), r.begin(), r.end());
  }
  if (suite == "properties" || suite == "all") {
    const auto r = cqsl::property_suite(seed);
    results.insert(results.end(), r.begin(), r.end());
  }
  if (results.empty()) {
    throw cqsl::ConfigError("verify suite must be oracle, properties or all");
  }
  return cqsl::print_results(results, std::cout) == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence quantum speed limit for qubit open-system dynamics"};
  app.set_version_flag("--version", cqsl::kVersion);
  app.require_subcommand(1);

  RawOptions raw;
  std::string figure_id;
  std::string verify_suite = "all";

  CLI::App* evolve = app.add_subcommand("evolve", "integrate a channel, write trajectory CSV");
  add_run_options(evolve, raw);
  CLI::App* qsl = app.add_subcommand("qsl", "evaluate the speed-limit report for one run");
  add_run_options(qsl, raw);
  CLI::App* figure = app.add_subcommand("figure", "emit a figure sweep CSV");
  figure->add_option("id", figure_id, "fig2_left|fig2_right|fig3_left|fig3_right")
      ->required();
  add_run_options(figure, raw);
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("suite", verify_suite, "oracle|properties|all");
  add_run_options(verify, raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (evolve->parsed()) return cmd_evolve(raw);
    if (qsl->parsed()) return cmd_qsl(raw);
    if (figure->parsed()) return cmd_figure(figure_id, raw);
    if (verify->parsed()) return cmd_verify(verify_suite, raw);
  } catch (const cqsl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const cqsl::Error& e) {
    // The message names the failing operation.
    std::cerr << "numerical failure in " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
