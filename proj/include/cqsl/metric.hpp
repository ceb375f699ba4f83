#pragma once

#include <iosfwd>
#include <utility>

#include "cqsl/dynamics.hpp"

namespace cqsl {

/// One node of the speed profile. The squared speed splits into a classical
/// Fisher part (population motion) and a skew-information part (unitary
/// motion): speed^2 = fisher/4 + 2*skew away from ill-conditioned nodes.
struct SpeedSample {
  double t = 0.0;
  double speed = 0.0;       // sqrt(Tr (d sqrt(rho)/dt)^2)
  double fisher = 0.0;      // I_F = 4 sum_j (d sqrt(lambda_j)/dt)^2
  double skew = 0.0;        // I_WY = -1/2 Tr [sqrt(rho), H_t]^2
  double recomposed = 0.0;  // fisher/4 + 2*skew
};

/// Finite-difference d sqrt(rho)/dt at node i: 2nd-order central in the
/// interior, 2nd-order one-sided at the endpoints. Symmetrized.
ComplexMatrix sqrt_derivative(const Trajectory& traj, std::size_t i);

/// Wigner-Yanase metric speed sqrt(Tr D^2) with D = sqrt_derivative.
double wy_speed(const Trajectory& traj, std::size_t i);

/// Splits the squared speed into Fisher and skew parts by tracking the
/// eigensystem across neighboring nodes (maximum-overlap matching with
/// phase alignment). Endpoint accuracy mirrors sqrt_derivative. Nodes with
/// near-zero eigenvalues give an ill-conditioned Fisher part; the full
/// matrix speed stays reliable there.
SpeedSample decompose_speed(const Trajectory& traj, std::size_t i);

/// Dephasing closed form I_F = 4 |rho01|^2 gamma^2 / (1 - 4 |rho01|^2),
/// valid for equal populations. Diverges as |rho01| -> 1/2.
double fisher_dephasing(double abs_rho01, double gamma);

/// Dephasing closed form I_WY = (omega0^2/2)(1/2 - sqrt(1/4 - |rho01|^2)).
double skew_dephasing(double abs_rho01, double omega0);

/// Second-order affinity expansion probe for the cell [t_i, t_{i+1}]: returns
/// {1 - A(rho_i, rho_{i+1}), cell_speed^2 dt^2 / 2} with the cell speed taken
/// as the average of the two node speeds.
std::pair<double, double> affinity_expansion_check(const Trajectory& traj, std::size_t i);

/// Header: t,speed,fisher,skew,recomposed. 17 significant digits.
void write_speed_csv(const Trajectory& traj, std::ostream& out);

}  // namespace cqsl
