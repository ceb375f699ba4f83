#include "cqsl/qsl.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace cqsl {

QslReport tau_csl(const Trajectory& traj) {
  if (traj.size() < 8) {
    throw GridTooCoarse("tau_csl: at least 8 trajectory nodes required");
  }
  double path = 0.0;
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    // chord = |sqrt(rho_{i+1}) - sqrt(rho_i)|_F = 2 sin(cell angle / 2)
    const double chord = (traj.nodes[i + 1].sqrt - traj.nodes[i].sqrt).norm();
    path += 2.0 * std::asin(std::min(1.0, 0.5 * chord));
  }
  const double delta = delta_c(traj.nodes.front(), traj.nodes.back());

  // Coherence changes below this band are integrator/eigensolver noise, far
  // under any physical signal at the supported grids.
  constexpr double kDeltaFloor = 1e-10;

  QslReport r;
  r.delta_c = delta;
  r.path_length = path;
  r.tau = traj.tau();
  r.avg_speed = path / r.tau;
  if (r.avg_speed < 1e-14) {
    if (std::abs(delta) > kDeltaFloor) {
      throw ZeroSpeed("tau_csl: endpoints differ in coherence while the path "
                      "has zero length; trajectory is inconsistent");
    }
    r.tau_csl = 0.0;
    r.ratio = 0.0;
    r.vacuous = true;
    return r;
  }
  if (std::abs(delta) <= kDeltaFloor) {
    // Bound valid but uninformative: the state moves without coherence change.
    r.tau_csl = 0.0;
    r.ratio = 0.0;
    r.vacuous = true;
    return r;
  }
  r.tau_csl = std::abs(delta) / r.avg_speed;
  r.ratio = r.tau_csl / r.tau;
  return r;
}

double dephasing_arc_length(double abs_rho01_0, double abs_rho01_tau) {
  const auto checked = [](double a) {
    if (!(a >= 0.0) || a > 0.5 + 1e-12) {
      throw InvalidArgument("dephasing_arc_length: arguments must lie in [0, 1/2]");
    }
    return std::min(1.0, 2.0 * a);
  };
  const double x0 = checked(abs_rho01_0);
  const double x1 = checked(abs_rho01_tau);
  return std::abs(0.5 * (std::asin(x1) - std::asin(x0)));
}

GeodesicPath make_geodesic(const DensityMatrix& rho0, const DensityMatrix& rho_tau,
                           double tau) {
  return make_geodesic(rho0, rho_tau, tau,
                       [tau](double t) { return t / tau; });
}

GeodesicPath make_geodesic(const DensityMatrix& rho0, const DensityMatrix& rho_tau,
                           double tau, std::function<double(double)> schedule) {
  if (rho0.dim() != rho_tau.dim()) {
    throw DimensionMismatch("make_geodesic: endpoint dimensions differ");
  }
  if (!(tau > 0.0)) {
    throw InvalidArgument("make_geodesic: tau must be > 0");
  }
  if (!schedule) {
    throw InvalidArgument("make_geodesic: schedule must be callable");
  }
  if (std::abs(schedule(0.0)) > 1e-12 || std::abs(schedule(tau) - 1.0) > 1e-12) {
    throw InvalidArgument("make_geodesic: schedule endpoints must be 0 and 1");
  }
  double prev = schedule(0.0);
  for (int i = 1; i <= 64; ++i) {
    const double p = schedule(tau * i / 64.0);
    if (p < prev - 1e-12) {
      throw InvalidArgument("make_geodesic: schedule must be monotone non-decreasing");
    }
    prev = p;
  }
  return GeodesicPath{sqrt_psd(rho0), sqrt_psd(rho_tau), tau, std::move(schedule)};
}

DensityMatrix geodesic_point(const GeodesicPath& path, double p) {
  if (p < -1e-12 || p > 1.0 + 1e-12) {
    throw InvalidArgument("geodesic_point: p must lie in [0, 1]");
  }
  p = std::clamp(p, 0.0, 1.0);
  const ComplexMatrix s = (1.0 - p) * path.s0.sqrt + p * path.s1.sqrt;
  ComplexMatrix m = s * s;
  const double tr = m.trace().real();
  if (tr <= 0.0) {
    throw DegenerateState("geodesic_point: interpolated root vanished");
  }
  m /= tr;
  return validate_density(m);
}

DensityMatrix geodesic_state_at(const GeodesicPath& path, double t) {
  if (t < -1e-12 || t > path.tau * (1.0 + 1e-12)) {
    throw InvalidArgument("geodesic_state_at: t must lie in [0, tau]");
  }
  return geodesic_point(path, path.schedule(std::clamp(t, 0.0, path.tau)));
}

std::pair<double, double> geodesic_triangle_check(const GeodesicPath& path, double p) {
  const StateSqrt mid = sqrt_psd(geodesic_point(path, p));
  const double total = angle(path.s0, path.s1);
  const double split = angle(path.s0, mid) + angle(mid, path.s1);
  return {total, split};
}

double geodesic_trace_profile(const GeodesicPath& path, double p) {
  return sqrt_psd(geodesic_point(path, p)).sqrt.trace().real();
}

double geodesic_trace_profile(const DensityMatrix& rho0, const DensityMatrix& rho_tau,
                              double p) {
  return geodesic_trace_profile(make_geodesic(rho0, rho_tau), p);
}

SaturationReport saturation_check(const Trajectory& traj, double tol) {
  if (traj.nodes.empty()) {
    throw InvalidArgument("saturation_check: empty trajectory");
  }
  const Eigen::Index n = traj.nodes.front().rho.dim();
  const auto diag_of = [n](const StateSqrt& s) {
    std::vector<double> d(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
      d[static_cast<std::size_t>(k)] = s.sqrt(k, k).real();
    }
    return d;
  };
  const std::vector<double> d0 = diag_of(traj.nodes.front());
  const IncoherentState p0 = closest_incoherent(traj.nodes.front());

  SaturationReport rep{true, true, true};
  for (const StateSqrt& node : traj.nodes) {
    const std::vector<double> d = diag_of(node);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (std::abs(d[i] - d0[i]) > tol) rep.static_diag_sqrt = false;
      for (std::size_t j = i + 1; j < d.size(); ++j) {
        if (std::abs(d[i] - d[j]) > tol) rep.equal_diag_sqrt = false;
      }
    }
    const IncoherentState p = closest_incoherent(node);
    for (std::size_t i = 0; i < p.probs.size(); ++i) {
      if (std::abs(p.probs[i] - p0.probs[i]) > tol) rep.fixed_closest_incoherent = false;
    }
  }
  return rep;
}

nlohmann::json report_to_json(const QslReport& r) {
  return nlohmann::json{
      {"delta_c", r.delta_c},   {"path_length", r.path_length},
      {"avg_speed", r.avg_speed}, {"tau", r.tau},
      {"tau_csl", r.tau_csl},   {"ratio", r.ratio},
      {"vacuous", r.vacuous},
  };
}

}  // namespace cqsl
