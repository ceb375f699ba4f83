#include "cqsl/run.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <variant>

namespace cqsl {
namespace {

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) {
      throw ConfigError(what + ": trailing characters in '" + text + "'");
    }
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError(what + ": cannot parse '" + text + "'");
  }
}

}  // namespace

double parse_angle(const std::string& text) {
  const std::string s = trimmed(text);
  if (s == "pi") return std::numbers::pi;
  if (s.rfind("pi/", 0) == 0) {
    const double den = parse_double(s.substr(3), "angle denominator");
    if (den == 0.0) throw ConfigError("angle: division by zero");
    return std::numbers::pi / den;
  }
  if (s.rfind("-pi/", 0) == 0) {
    const double den = parse_double(s.substr(4), "angle denominator");
    if (den == 0.0) throw ConfigError("angle: division by zero");
    return -std::numbers::pi / den;
  }
  return parse_double(s, "angle");
}

RateModel parse_rate(const std::string& text) {
  const std::string s = trimmed(text);
  if (s.rfind("const:", 0) == 0) {
    return ConstantRate{parse_double(s.substr(6), "constant rate")};
  }
  if (s.rfind("ohmic:", 0) == 0) {
    std::optional<double> k, wc;
    std::stringstream ss(s.substr(6));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("ohmic rate: expected k=<k>,wc=<w>, got '" + item + "'");
      }
      const std::string key = trimmed(item.substr(0, eq));
      const double val = parse_double(trimmed(item.substr(eq + 1)), "ohmic parameter");
      if (key == "k") {
        k = val;
      } else if (key == "wc") {
        wc = val;
      } else {
        throw ConfigError("ohmic rate: unknown parameter '" + key + "'");
      }
    }
    if (!k || !wc) throw ConfigError("ohmic rate: both k and wc are required");
    if (!(*k > 0.0) || !(*wc > 0.0)) {
      throw ConfigError("ohmic rate: k and wc must be > 0");
    }
    return OhmicZeroTRate{*k, *wc};
  }
  throw ConfigError("rate must be const:<g> or ohmic:k=<k>,wc=<w>, got '" + s + "'");
}

std::string rate_to_string(const RateModel& rate) {
  if (const auto* c = std::get_if<ConstantRate>(&rate)) {
    return "const:" + to_sig17(c->gamma);
  }
  const auto& o = std::get<OhmicZeroTRate>(rate);
  return "ohmic:k=" + to_sig17(o.k) + ",wc=" + to_sig17(o.omega_c);
}

ChannelKind parse_channel(const std::string& text) {
  if (text == "dephasing") return ChannelKind::Dephasing;
  if (text == "damping") return ChannelKind::Damping;
  if (text == "unitary") return ChannelKind::Unitary;
  throw ConfigError("channel must be dephasing, damping or unitary, got '" + text + "'");
}

std::string channel_to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::Dephasing: return "dephasing";
    case ChannelKind::Damping: return "damping";
    case ChannelKind::Unitary: return "unitary";
  }
  return "unknown";
}

namespace {

double json_angle(const nlohmann::json& j) {
  if (j.is_string()) return parse_angle(j.get<std::string>());
  return j.get<double>();
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  if (j.contains("channel")) c.channel = parse_channel(j.at("channel").get<std::string>());
  if (j.contains("gamma")) c.rate = parse_rate(j.at("gamma").get<std::string>());
  if (j.contains("theta")) c.theta = json_angle(j.at("theta"));
  if (j.contains("phase")) c.phase = json_angle(j.at("phase"));
  if (j.contains("omega0")) c.omega0 = j.at("omega0").get<double>();
  if (j.contains("tau")) c.tau = j.at("tau").get<double>();
  if (j.contains("t0")) c.t0 = j.at("t0").get<double>();
  if (j.contains("steps")) c.steps = j.at("steps").get<int>();
  if (j.contains("h")) c.hamiltonian = matrix_from_json(j.at("h"));
  if (j.contains("out")) c.out = j.at("out").get<std::string>();
  if (j.contains("format")) c.format = j.at("format").get<std::string>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j{
      {"channel", channel_to_string(c.channel)},
      {"gamma", rate_to_string(c.rate)},
      {"theta", c.theta},
      {"phase", c.phase},
      {"omega0", c.omega0},
      {"tau", c.tau},
      {"t0", c.t0},
      {"steps", c.steps},
      {"format", c.format},
      {"seed", c.seed},
  };
  if (!c.out.empty()) j["out"] = c.out;
  if (c.hamiltonian) j["h"] = matrix_to_json(*c.hamiltonian);
  return j;
}

void validate_config(const RunConfig& c) {
  if (!(c.tau > 0.0)) throw ConfigError("config: tau must be > 0");
  if (c.steps != 0 && c.steps < 8) throw ConfigError("config: steps must be >= 8");
  if (c.t0 < 0.0) throw ConfigError("config: t0 must be >= 0");
  if (c.format != "csv" && c.format != "json") {
    throw ConfigError("config: format must be csv or json");
  }
}

int resolved_steps(const RunConfig& c) {
  if (c.steps != 0) return c.steps;
  return std::max(8, static_cast<int>(std::ceil(4000.0 * c.tau)));
}

DensityMatrix initial_state(const RunConfig& c) {
  return qubit_from_theta(c.theta, c.phase);
}

ChannelSpec channel_spec(const RunConfig& c) {
  switch (c.channel) {
    case ChannelKind::Dephasing:
      return DephasingChannel{c.omega0, c.rate};
    case ChannelKind::Damping:
      return AmplitudeDampingChannel{c.rate};
    case ChannelKind::Unitary: {
      ComplexMatrix h = c.hamiltonian ? *c.hamiltonian : ComplexMatrix(0.5 * c.omega0 * pauli_z());
      return UnitaryChannel{std::move(h)};
    }
  }
  throw ConfigError("config: unknown channel");
}

Trajectory run_trajectory(const RunConfig& c) {
  validate_config(c);
  const DensityMatrix rho0 = initial_state(c);
  const ChannelSpec spec = channel_spec(c);
  DensityMatrix start = rho0;
  if (c.t0 > 0.0) {
    switch (c.channel) {
      case ChannelKind::Dephasing:
        start = dephasing_state(rho0, c.omega0, c.rate, c.t0);
        break;
      case ChannelKind::Damping:
        start = damping_state(rho0, c.rate, c.t0);
        break;
      case ChannelKind::Unitary:
        break;  // time-independent generator: the shift is a no-op
    }
  }
  return integrate_master(start, spec, c.tau, resolved_steps(c), c.t0);
}

QslReport run_qsl(const RunConfig& c) {
  return tau_csl(run_trajectory(c));
}

nlohmann::json qsl_json(const RunConfig& c, const QslReport& r) {
  nlohmann::json j = report_to_json(r);
  j["config"] = config_to_json(c);
  j["version"] = kVersion;
  return j;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) {
    throw ConfigError("log_grid: need 0 < lo < hi and n >= 2");
  }
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (!(hi > lo) || n < 2) {
    throw ConfigError("linear_grid: need lo < hi and n >= 2");
  }
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  }
  g.back() = hi;
  return g;
}

namespace {

int sweep_steps(double tau, int steps_per_unit) {
  return std::max(16, static_cast<int>(std::ceil(steps_per_unit * tau)));
}

}  // namespace

std::vector<Fig2Row> figure2_rows(double t0, const std::vector<double>& taus,
                                  int steps_per_unit) {
  if (taus.size() < 16 || !std::is_sorted(taus.begin(), taus.end())) {
    throw ConfigError("figure sweep grid must be increasing with >= 16 points");
  }
  const RateModel rate = OhmicZeroTRate{4.0, 1.0};
  const DensityMatrix rho0 = qubit_from_theta(std::numbers::pi / 2.0);
  const DensityMatrix start = t0 > 0.0 ? dephasing_state(rho0, 0.0, rate, t0) : rho0;

  std::vector<Fig2Row> rows;
  rows.reserve(taus.size());
  for (const double tau : taus) {
    const Trajectory traj = integrate_master(start, DephasingChannel{0.0, rate}, tau,
                                             sweep_steps(tau, steps_per_unit), t0);
    const QslReport rep = tau_csl(traj);
    rows.push_back({tau, rep.ratio, gamma_at(rate, t0 + tau)});
  }
  return rows;
}

std::vector<Fig3Row> figure3_rows(ChannelKind kind, const std::vector<double>& taus,
                                  int steps_per_unit) {
  if (taus.size() < 16 || !std::is_sorted(taus.begin(), taus.end())) {
    throw ConfigError("figure sweep grid must be increasing with >= 16 points");
  }
  if (kind == ChannelKind::Unitary) {
    throw ConfigError("figure3: dephasing or damping channel required");
  }
  const RateModel rate = ConstantRate{2.0};
  const std::vector<double> thetas = {std::numbers::pi / 2.0, std::numbers::pi / 3.0,
                                      std::numbers::pi / 4.0};
  std::vector<Fig3Row> rows;
  rows.reserve(thetas.size() * taus.size());
  for (const double theta : thetas) {
    const DensityMatrix rho0 = qubit_from_theta(theta);
    for (const double tau : taus) {
      const ChannelSpec spec = kind == ChannelKind::Dephasing
                                   ? ChannelSpec{DephasingChannel{0.0, rate}}
                                   : ChannelSpec{AmplitudeDampingChannel{rate}};
      const Trajectory traj =
          integrate_master(rho0, spec, tau, sweep_steps(tau, steps_per_unit));
      rows.push_back({theta, tau, tau_csl(traj).tau_csl});
    }
  }
  return rows;
}

std::string figure2_csv(const std::vector<Fig2Row>& rows) {
  std::string s = "tau,ratio,gamma_at_tau\n";
  for (const auto& r : rows) {
    s += to_sig17(r.tau) + "," + to_sig17(r.ratio) + "," + to_sig17(r.gamma_at_tau) + "\n";
  }
  return s;
}

std::string figure3_csv(const std::vector<Fig3Row>& rows) {
  std::string s = "theta,tau,tau_csl\n";
  for (const auto& r : rows) {
    s += to_sig17(r.theta) + "," + to_sig17(r.tau) + "," + to_sig17(r.tau_csl) + "\n";
  }
  return s;
}

std::string run_figure(const std::string& figure_id, int steps_per_unit) {
  if (figure_id == "fig2_left") {
    return figure2_csv(figure2_rows(0.0, log_grid(0.05, 2.0, 64), steps_per_unit));
  }
  if (figure_id == "fig2_right") {
    return figure2_csv(figure2_rows(1.0, log_grid(0.05, 2.0, 64), steps_per_unit));
  }
  if (figure_id == "fig3_left") {
    return figure3_csv(
        figure3_rows(ChannelKind::Dephasing, linear_grid(0.05, 1.5, 30), steps_per_unit));
  }
  if (figure_id == "fig3_right") {
    return figure3_csv(
        figure3_rows(ChannelKind::Damping, linear_grid(0.05, 1.5, 30), steps_per_unit));
  }
  throw ConfigError("figure id must be one of fig2_left, fig2_right, fig3_left, fig3_right");
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream ss;
  write_trajectory_csv(traj, ss);
  return ss.str();
}

nlohmann::json trajectory_json(const Trajectory& traj) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < traj.size(); ++i) {
    nodes.push_back({{"t", traj.t[i]},
                     {"state", matrix_to_json(traj.nodes[i].rho.mat())},
                     {"gamma_cum", traj.gamma_cum[i]}});
  }
  return nlohmann::json{{"nodes", std::move(nodes)}, {"version", kVersion}};
}

}  // namespace cqsl
