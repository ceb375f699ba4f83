#pragma once

#include <functional>
#include <utility>

#include "json.hpp"

#include "cqsl/coherence.hpp"
#include "cqsl/metric.hpp"

namespace cqsl {

/// Coherence speed-limit summary for one evolution. The bound guarantees
/// tau >= tau_csl, i.e. ratio <= 1 up to quadrature tolerance. `vacuous`
/// flags runs whose coherence change is zero while the state still moves:
/// the bound holds but carries no information.
struct QslReport {
  double delta_c = 0.0;      // signed addressed-angle change, radians
  double path_length = 0.0;  // integral of the metric speed
  double avg_speed = 0.0;    // path_length / tau
  double tau = 0.0;
  double tau_csl = 0.0;      // |delta_c| / avg_speed
  double ratio = 0.0;        // tau_csl / tau
  bool vacuous = false;
};

/// Geodesic between two states on the Wigner-Yanase manifold: square roots
/// interpolate linearly and are renormalized. `schedule` maps [0, tau] to
/// [0, 1] monotonically with exact endpoints (linear by default).
struct GeodesicPath {
  StateSqrt s0;
  StateSqrt s1;
  double tau = 1.0;
  std::function<double(double)> schedule;
};

/// Evaluates the coherence speed limit on a sampled trajectory. The path
/// length uses the composite midpoint (open) rule over the grid cells with
/// the cell integrand evaluated as the exact cell angle
/// 2 asin(|sqrt(rho_{i+1}) - sqrt(rho_i)|_F / 2); no endpoint speed is ever
/// needed, so integrable t^{-1/2} speed divergences at pure starting states
/// are handled without special-casing.
QslReport tau_csl(const Trajectory& traj);

/// Closed-form path length |(arcsin 2a_tau - arcsin 2a_0)/2| for pure
/// dephasing of an equal-population qubit with a sign-constant rate.
double dephasing_arc_length(double abs_rho01_0, double abs_rho01_tau);

GeodesicPath make_geodesic(const DensityMatrix& rho0, const DensityMatrix& rho_tau,
                           double tau = 1.0);
GeodesicPath make_geodesic(const DensityMatrix& rho0, const DensityMatrix& rho_tau,
                           double tau, std::function<double(double)> schedule);

/// State at interpolation parameter p in [0, 1]; p=0 and p=1 recover the
/// endpoints.
DensityMatrix geodesic_point(const GeodesicPath& path, double p);
DensityMatrix geodesic_state_at(const GeodesicPath& path, double t);

/// Returns {angle(rho0, rho_tau), angle(rho0, rho_p) + angle(rho_p, rho_tau)};
/// on the geodesic both agree to round-off.
std::pair<double, double> geodesic_triangle_check(const GeodesicPath& path, double p);

/// Tr sqrt(rho_p) along the geodesic, computed directly from the point.
double geodesic_trace_profile(const DensityMatrix& rho0, const DensityMatrix& rho_tau,
                              double p);
double geodesic_trace_profile(const GeodesicPath& path, double p);

/// Attainability structure of a trajectory: identical sqrt diagonals across
/// indices, time-frozen sqrt diagonals, and a time-independent closest
/// incoherent state.
struct SaturationReport {
  bool equal_diag_sqrt = false;
  bool static_diag_sqrt = false;
  bool fixed_closest_incoherent = false;
};
SaturationReport saturation_check(const Trajectory& traj, double tol);

nlohmann::json report_to_json(const QslReport& r);

}  // namespace cqsl
