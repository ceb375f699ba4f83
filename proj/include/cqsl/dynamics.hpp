#pragma once

#include <iosfwd>
#include <variant>
#include <vector>

#include "cqsl/densmat.hpp"

namespace cqsl {

struct ConstantRate {
  double gamma = 0.0;  // any sign; negative rates model synthetic backflow
};

/// Zero-temperature Ohmic-family dephasing rate
///   gamma(t) = omega_c (1 + omega_c^2 t^2)^{-k/2} Gamma(k) sin(k arctan(omega_c t)).
struct OhmicZeroTRate {
  double k = 1.0;        // > 0; sub-Ohmic k<1, Ohmic k=1, super-Ohmic k>1
  double omega_c = 1.0;  // > 0 cutoff frequency
};

using RateModel = std::variant<ConstantRate, OhmicZeroTRate>;

struct DephasingChannel {
  double omega0 = 0.0;
  RateModel rate;
};

struct AmplitudeDampingChannel {
  RateModel rate;
};

struct UnitaryChannel {
  ComplexMatrix h;  // Hermitian generator
};

using ChannelSpec = std::variant<DephasingChannel, AmplitudeDampingChannel, UnitaryChannel>;

/// Uniformly sampled evolution: validated state + principal root per node and
/// the accumulated rate integral (with any time-origin shift applied).
struct Trajectory {
  std::vector<double> t;
  std::vector<StateSqrt> nodes;
  std::vector<double> gamma_cum;

  double dt() const { return t.size() > 1 ? t[1] - t[0] : 0.0; }
  double tau() const { return t.empty() ? 0.0 : t.back(); }
  std::size_t size() const { return t.size(); }
  const DensityMatrix& state(std::size_t i) const { return nodes[i].rho; }
};

double gamma_at(const RateModel& rate, double t);

/// Integral of the rate over [0, t]. Exact for constant rates, adaptive
/// Simpson quadrature (absolute error <= quad_tol) for the Ohmic family.
double gamma_integral(const RateModel& rate, double t, double quad_tol = 1e-12);
double gamma_integral_between(const RateModel& rate, double a, double b,
                              double quad_tol = 1e-12);

/// Dephasing solution: populations frozen, off-diagonal damped by
/// exp(-integral of gamma) and rotated by exp(-i omega0 t). The rate is
/// evaluated at t0 + t.
DensityMatrix dephasing_state(const DensityMatrix& rho0, double omega0,
                              const RateModel& rate, double t, double t0 = 0.0);

/// Amplitude-damping solution: the excited (bottom-right) population decays by
/// exp(-integral of gamma), coherences by its square root; the top-left
/// element relaxes toward 1.
DensityMatrix damping_state(const DensityMatrix& rho0, const RateModel& rate,
                            double t, double t0 = 0.0);

/// Fixed-step classical 4th-order integration of the master equation, the rate
/// evaluated at t0 + t (midpoint sampling inside each step). Every node is
/// re-validated with a 1e-9 tolerance band and clamped.
Trajectory integrate_master(const DensityMatrix& rho0, const ChannelSpec& channel,
                            double tau, int steps, double t0 = 0.0);

/// Samples the closed-form dephasing/damping solutions onto a uniform grid.
Trajectory trajectory_from_analytic(const DensityMatrix& rho0, const ChannelSpec& channel,
                                    double tau, int steps, double t0 = 0.0);

/// Header: t,rho00_re,rho00_im,rho01_re,rho01_im,rho10_re,rho10_im,
/// rho11_re,rho11_im,gamma_cum. Qubit trajectories only, 17 significant digits.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

}  // namespace cqsl
