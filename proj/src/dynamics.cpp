#include "cqsl/dynamics.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <string>

namespace cqsl {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_ohmic(const OhmicZeroTRate& r) {
  if (!(r.k > 0.0) || !(r.omega_c > 0.0)) {
    throw ConfigError("ohmic rate requires k > 0 and omega_c > 0");
  }
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  if (std::abs(err) <= 15.0 * tol) {
    return left + right + err / 15.0;
  }
  if (depth <= 0) {
    throw QuadratureFailure("gamma_integral: tolerance not met within max subdivisions");
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

DensityMatrix validated_node(const ComplexMatrix& m, std::size_t node, double tol) {
  try {
    return validate_density(m, tol);
  } catch (const Error& e) {
    throw ValidationFailure("integrate_master: node " + std::to_string(node) +
                            " left the tolerance band (" + e.what() + ")");
  }
}

ComplexMatrix dephasing_matrix(const ComplexMatrix& rho0, double damp, double phase_angle) {
  ComplexMatrix m = rho0;
  m(0, 1) *= damp * std::polar(1.0, phase_angle);
  m(1, 0) = std::conj(m(0, 1));
  return m;
}

ComplexMatrix damping_matrix(const ComplexMatrix& rho0, double e) {
  const double rho11 = rho0(1, 1).real();
  ComplexMatrix m(2, 2);
  m(1, 1) = rho11 * e;
  m(0, 0) = 1.0 - rho11 * e;
  m(0, 1) = rho0(0, 1) * std::sqrt(e);
  m(1, 0) = std::conj(m(0, 1));
  return m;
}

const RateModel* channel_rate(const ChannelSpec& channel) {
  if (const auto* d = std::get_if<DephasingChannel>(&channel)) return &d->rate;
  if (const auto* a = std::get_if<AmplitudeDampingChannel>(&channel)) return &a->rate;
  return nullptr;
}

}  // namespace

double gamma_at(const RateModel& rate, double t) {
  if (t < 0.0) {
    throw InvalidArgument("gamma_at: t must be >= 0");
  }
  return std::visit(
      overloaded{
          [](const ConstantRate& r) { return r.gamma; },
          [t](const OhmicZeroTRate& r) {
            check_ohmic(r);
            const double x = r.omega_c * t;
            return r.omega_c * std::pow(1.0 + x * x, -0.5 * r.k) * std::tgamma(r.k) *
                   std::sin(r.k * std::atan(x));
          }},
      rate);
}

double gamma_integral_between(const RateModel& rate, double a, double b, double quad_tol) {
  if (a < 0.0 || b < a) {
    throw InvalidArgument("gamma_integral: interval must satisfy 0 <= a <= b");
  }
  return std::visit(
      overloaded{
          [&](const ConstantRate& r) { return r.gamma * (b - a); },
          [&](const OhmicZeroTRate& r) {
            check_ohmic(r);
            if (b == a) return 0.0;
            const std::function<double(double)> f = [&rate](double t) {
              return gamma_at(rate, t);
            };
            const double fa = f(a);
            const double fb = f(b);
            const double fm = f(0.5 * (a + b));
            const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
            return adaptive_simpson(f, a, b, fa, fm, fb, whole, quad_tol, 48);
          }},
      rate);
}

double gamma_integral(const RateModel& rate, double t, double quad_tol) {
  return gamma_integral_between(rate, 0.0, t, quad_tol);
}

DensityMatrix dephasing_state(const DensityMatrix& rho0, double omega0,
                              const RateModel& rate, double t, double t0) {
  if (rho0.dim() != 2) {
    throw DimensionMismatch("dephasing_state: qubit channel");
  }
  if (t < 0.0 || t0 < 0.0) {
    throw InvalidArgument("dephasing_state: t and t0 must be >= 0");
  }
  const double damp = std::exp(-gamma_integral_between(rate, t0, t0 + t));
  return validate_density(dephasing_matrix(rho0.mat(), damp, -omega0 * t));
}

DensityMatrix damping_state(const DensityMatrix& rho0, const RateModel& rate,
                            double t, double t0) {
  if (rho0.dim() != 2) {
    throw DimensionMismatch("damping_state: qubit channel");
  }
  if (t < 0.0 || t0 < 0.0) {
    throw InvalidArgument("damping_state: t and t0 must be >= 0");
  }
  const double e = std::exp(-gamma_integral_between(rate, t0, t0 + t));
  return validate_density(damping_matrix(rho0.mat(), e));
}

Trajectory integrate_master(const DensityMatrix& rho0, const ChannelSpec& channel,
                            double tau, int steps, double t0) {
  if (steps < 2) {
    throw InvalidArgument("integrate_master: steps must be >= 2");
  }
  if (!(tau > 0.0)) {
    throw InvalidArgument("integrate_master: tau must be > 0");
  }
  if (t0 < 0.0) {
    throw InvalidArgument("integrate_master: t0 must be >= 0");
  }
  const bool qubit_channel = !std::holds_alternative<UnitaryChannel>(channel);
  if (qubit_channel && rho0.dim() != 2) {
    throw DimensionMismatch("integrate_master: dephasing/damping act on qubits");
  }
  if (const auto* u = std::get_if<UnitaryChannel>(&channel)) {
    if (u->h.rows() != rho0.dim() || u->h.cols() != rho0.dim()) {
      throw DimensionMismatch("integrate_master: Hamiltonian dimension mismatch");
    }
    if ((u->h - u->h.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
      throw NotHermitian("integrate_master: unitary generator must be Hermitian");
    }
  }

  const ComplexMatrix sz = pauli_z();
  ComplexMatrix sm(2, 2), sp(2, 2);
  sm << 0, 1, 0, 0;  // lowers the excited (bottom-right) population
  sp << 0, 0, 1, 0;
  const ComplexMatrix number = sp * sm;
  const Complex mi(0.0, -1.0);

  const auto rhs = [&](const ComplexMatrix& m, double t_abs) -> ComplexMatrix {
    return std::visit(
        overloaded{
            [&](const DephasingChannel& ch) -> ComplexMatrix {
              const double g = gamma_at(ch.rate, t_abs);
              const ComplexMatrix h0 = 0.5 * ch.omega0 * sz;
              return mi * (h0 * m - m * h0) + 0.5 * g * (sz * m * sz - m);
            },
            [&](const AmplitudeDampingChannel& ch) -> ComplexMatrix {
              const double g = gamma_at(ch.rate, t_abs);
              return 0.5 * g * (2.0 * sm * m * sp - (number * m + m * number));
            },
            [&](const UnitaryChannel& ch) -> ComplexMatrix {
              return mi * (ch.h * m - m * ch.h);
            }},
        channel);
  };
  const RateModel* rate = channel_rate(channel);

  Trajectory traj;
  traj.t.reserve(static_cast<std::size_t>(steps) + 1);
  traj.nodes.reserve(static_cast<std::size_t>(steps) + 1);
  traj.gamma_cum.reserve(static_cast<std::size_t>(steps) + 1);

  const double h = tau / steps;
  ComplexMatrix m = rho0.mat();
  traj.t.push_back(0.0);
  traj.nodes.push_back(sqrt_psd(rho0));
  traj.gamma_cum.push_back(0.0);

  for (int s = 0; s < steps; ++s) {
    const double tl = s * h;
    const ComplexMatrix k1 = rhs(m, t0 + tl);
    const ComplexMatrix k2 = rhs(m + 0.5 * h * k1, t0 + tl + 0.5 * h);
    const ComplexMatrix k3 = rhs(m + 0.5 * h * k2, t0 + tl + 0.5 * h);
    const ComplexMatrix k4 = rhs(m + h * k3, t0 + tl + h);
    m += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    DensityMatrix node = validated_node(m, static_cast<std::size_t>(s) + 1, 1e-9);
    m = node.mat();
    traj.t.push_back((s + 1) * h);
    traj.gamma_cum.push_back(traj.gamma_cum.back() +
                             (rate ? gamma_integral_between(*rate, t0 + tl, t0 + tl + h, 1e-14)
                                   : 0.0));
    traj.nodes.push_back(sqrt_psd(node));
  }
  return traj;
}

Trajectory trajectory_from_analytic(const DensityMatrix& rho0, const ChannelSpec& channel,
                                    double tau, int steps, double t0) {
  if (steps < 2) {
    throw InvalidArgument("trajectory_from_analytic: steps must be >= 2");
  }
  if (!(tau > 0.0)) {
    throw InvalidArgument("trajectory_from_analytic: tau must be > 0");
  }
  if (t0 < 0.0) {
    throw InvalidArgument("trajectory_from_analytic: t0 must be >= 0");
  }
  if (std::holds_alternative<UnitaryChannel>(channel)) {
    throw InvalidArgument("trajectory_from_analytic: closed forms exist for "
                          "dephasing and damping channels only");
  }
  if (rho0.dim() != 2) {
    throw DimensionMismatch("trajectory_from_analytic: qubit channel");
  }
  const RateModel* rate = channel_rate(channel);
  const auto* dephasing = std::get_if<DephasingChannel>(&channel);

  Trajectory traj;
  traj.t.reserve(static_cast<std::size_t>(steps) + 1);
  traj.nodes.reserve(static_cast<std::size_t>(steps) + 1);
  traj.gamma_cum.reserve(static_cast<std::size_t>(steps) + 1);

  const double h = tau / steps;
  traj.t.push_back(0.0);
  traj.nodes.push_back(sqrt_psd(rho0));
  traj.gamma_cum.push_back(0.0);
  for (int s = 1; s <= steps; ++s) {
    const double t = s * h;
    const double cum = traj.gamma_cum.back() +
                       gamma_integral_between(*rate, t0 + (s - 1) * h, t0 + t, 1e-14);
    traj.t.push_back(t);
    traj.gamma_cum.push_back(cum);
    const ComplexMatrix m =
        dephasing ? dephasing_matrix(rho0.mat(), std::exp(-cum), -dephasing->omega0 * t)
                  : damping_matrix(rho0.mat(), std::exp(-cum));
    traj.nodes.push_back(sqrt_psd(validate_density(m)));
  }
  return traj;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  if (!traj.nodes.empty() && traj.nodes.front().rho.dim() != 2) {
    throw DimensionMismatch("write_trajectory_csv: qubit trajectories only");
  }
  out << "t,rho00_re,rho00_im,rho01_re,rho01_im,rho10_re,rho10_im,"
         "rho11_re,rho11_im,gamma_cum\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& m = traj.nodes[i].rho.mat();
    out << to_sig17(traj.t[i]);
    for (Eigen::Index r = 0; r < 2; ++r) {
      for (Eigen::Index c = 0; c < 2; ++c) {
        out << ',' << to_sig17(m(r, c).real()) << ',' << to_sig17(m(r, c).imag());
      }
    }
    out << ',' << to_sig17(traj.gamma_cum[i]) << '\n';
  }
}

}  // namespace cqsl
