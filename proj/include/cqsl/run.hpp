#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cqsl/qsl.hpp"

namespace cqsl {

inline constexpr const char* kVersion = "0.1.0";

enum class ChannelKind { Dephasing, Damping, Unitary };

/// One evolution run. `steps == 0` resolves to 4000 steps per unit time.
/// `t0 > 0` shifts the rate's time origin: the configured state is first
/// carried through [0, t0] by the channel's closed form and the measured
/// window then sees the rate at t0 + t. For a negative-rate window this is
/// the coherence-generating setup; re-preparing a fresh maximal state there
/// would leave the state space.
struct RunConfig {
  ChannelKind channel = ChannelKind::Dephasing;
  RateModel rate = ConstantRate{1.0};
  double theta = 1.5707963267948966;
  double phase = 0.0;
  double omega0 = 0.0;
  double tau = 1.0;
  double t0 = 0.0;
  int steps = 0;
  std::optional<ComplexMatrix> hamiltonian;  // unitary channel override
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 1;
};

/// Accepts plain decimals plus the literal tokens "pi" and "pi/<den>".
double parse_angle(const std::string& text);

/// Accepts "const:<g>" and "ohmic:k=<k>,wc=<w>".
RateModel parse_rate(const std::string& text);
std::string rate_to_string(const RateModel& rate);

ChannelKind parse_channel(const std::string& text);
std::string channel_to_string(ChannelKind kind);

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);

void validate_config(const RunConfig& c);
int resolved_steps(const RunConfig& c);
DensityMatrix initial_state(const RunConfig& c);
ChannelSpec channel_spec(const RunConfig& c);

/// Builds the run's trajectory (4th-order integration of the master equation).
Trajectory run_trajectory(const RunConfig& c);
QslReport run_qsl(const RunConfig& c);

/// Report JSON plus a config echo and version string.
nlohmann::json qsl_json(const RunConfig& c, const QslReport& r);

struct Fig2Row {
  double tau, ratio, gamma_at_tau;
};
struct Fig3Row {
  double theta, tau, tau_csl;
};

std::vector<double> log_grid(double lo, double hi, int n);
std::vector<double> linear_grid(double lo, double hi, int n);

/// Ratio sweep for the super-Ohmic dephasing model (k=4, omega_c=1,
/// theta=pi/2, omega0=0) versus evolution time; t0=1 restarts inside the
/// negative-rate window.
std::vector<Fig2Row> figure2_rows(double t0, const std::vector<double>& taus,
                                  int steps_per_unit = 4000);

/// tau_csl versus tau for theta in {pi/2, pi/3, pi/4} at constant gamma=2.
std::vector<Fig3Row> figure3_rows(ChannelKind kind, const std::vector<double>& taus,
                                  int steps_per_unit = 4000);

std::string figure2_csv(const std::vector<Fig2Row>& rows);
std::string figure3_csv(const std::vector<Fig3Row>& rows);

/// Default sweeps: fig2 64 tau-points log-uniform in [0.05, 2], fig3 30
/// tau-points linear in [0.05, 1.5].
std::string run_figure(const std::string& figure_id, int steps_per_unit = 4000);

std::string trajectory_csv(const Trajectory& traj);

/// Node list with matrix-JSON states, for `evolve --format json`.
nlohmann::json trajectory_json(const Trajectory& traj);

}  // namespace cqsl
