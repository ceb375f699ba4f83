#include "cqsl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "cqsl/coherence.hpp"
#include "cqsl/metric.hpp"
#include "cqsl/qsl.hpp"
#include "cqsl/run.hpp"
#include "cqsl/sampling.hpp"

namespace cqsl {
namespace {

constexpr double kPi = std::numbers::pi;

CheckResult bounded(std::string name, double residual, double threshold) {
  const bool pass = residual <= threshold;
  return CheckResult{std::move(name), residual, threshold, pass};
}

double best_grid_affinity(const StateSqrt& s, long grid) {
  const double d0 = s.sqrt(0, 0).real();
  const double d1 = s.sqrt(1, 1).real();
  double best = 0.0;
  for (long i = 0; i <= grid; ++i) {
    const double q = static_cast<double>(i) / static_cast<double>(grid);
    best = std::max(best, std::sqrt(q) * d0 + std::sqrt(1.0 - q) * d1);
  }
  return best;
}

}  // namespace

std::vector<CheckResult> oracle_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);

  {
    // Coherence closed form against the incoherent-grid scan, plus the
    // optimality of the squared-sqrt-diagonal populations on the same grid.
    const long grid = 10000;
    double worst_closed = 0.0;
    double worst_opt = 0.0;
    double worst_identity = 0.0;
    for (int n = 0; n < 1000; ++n) {
      const DensityMatrix rho = random_qubit(rng);
      const StateSqrt s = sqrt_psd(rho);
      const double closed = coherence_skew(s).c;
      const double brute = coherence_bruteforce(rho, grid);
      worst_closed = std::max(worst_closed, std::abs(closed - brute));

      const IncoherentState star = closest_incoherent(s);
      const double a_star = affinity(rho, to_density(star));
      worst_opt = std::max(worst_opt, best_grid_affinity(s, grid) - a_star);
      worst_identity = std::max(worst_identity, std::abs(a_star * a_star - (1.0 - closed)));
    }
    out.push_back(bounded("coherence closed form vs 1e4-grid scan (1000 qubits)",
                          worst_closed, 2e-4));
    out.push_back(bounded("closest-incoherent populations reach the grid optimum",
                          worst_opt, 1e-6));
    out.push_back(bounded("affinity(rho, rho*)^2 = 1 - C(rho)", worst_identity, 1e-10));
  }

  {
    // Ohmic rate integral against a brute-force trapezoid reference.
    const RateModel rate = OhmicZeroTRate{4.0, 1.0};
    const double t = 2.0;
    const long panels = 1000000;
    double acc = 0.5 * (gamma_at(rate, 0.0) + gamma_at(rate, t));
    for (long i = 1; i < panels; ++i) {
      acc += gamma_at(rate, t * static_cast<double>(i) / static_cast<double>(panels));
    }
    const double reference = acc * t / static_cast<double>(panels);
    const double quad = gamma_integral(rate, t, 1e-12);
    out.push_back(bounded("ohmic rate integral vs 1e6-panel trapezoid (k=4, t=2)",
                          std::abs(quad - reference), 1e-8));
  }

  {
    // Analytic channel solutions against the 4th-order integrator.
    const DensityMatrix rho0 = qubit_from_theta(kPi / 2.0);
    const RateModel rate = ConstantRate{2.0};
    const Trajectory deph =
        integrate_master(rho0, DephasingChannel{0.0, rate}, 0.5, 2000);
    const DensityMatrix deph_exact = dephasing_state(rho0, 0.0, rate, 0.5);
    out.push_back(bounded("dephasing integrator vs closed form (2000 steps)",
                          (deph.nodes.back().rho.mat() - deph_exact.mat()).norm(), 1e-8));

    const Trajectory damp =
        integrate_master(rho0, AmplitudeDampingChannel{rate}, 0.5, 2000);
    const DensityMatrix damp_exact = damping_state(rho0, rate, 0.5);
    out.push_back(bounded("damping integrator vs closed form (2000 steps)",
                          (damp.nodes.back().rho.mat() - damp_exact.mat()).norm(), 1e-8));
  }

  return out;
}

std::vector<CheckResult> property_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);

  {
    // Speed-limit bound over random states, channels, rates and horizons.
    std::uniform_real_distribution<double> theta_d(0.05, kPi - 0.05);
    std::uniform_real_distribution<double> gamma_d(0.5, 4.0);
    std::uniform_real_distribution<double> tau_d(0.1, 2.0);
    std::uniform_real_distribution<double> omega_d(0.0, 2.0);
    std::bernoulli_distribution pick(0.5);
    double max_ratio = 0.0;
    double worst_margin = 0.0;  // |delta_c| - path_length, must stay <= 0
    for (int n = 0; n < 200; ++n) {
      const DensityMatrix rho0 = qubit_from_theta(theta_d(rng));
      const RateModel rate = ConstantRate{gamma_d(rng)};
      const double tau = tau_d(rng);
      const ChannelSpec spec = pick(rng)
                                   ? ChannelSpec{DephasingChannel{omega_d(rng), rate}}
                                   : ChannelSpec{AmplitudeDampingChannel{rate}};
      const int steps = std::max(16, static_cast<int>(std::ceil(2000.0 * tau)));
      const QslReport rep = tau_csl(trajectory_from_analytic(rho0, spec, tau, steps));
      max_ratio = std::max(max_ratio, rep.ratio);
      worst_margin = std::max(worst_margin, std::abs(rep.delta_c) - rep.path_length);
    }
    out.push_back(bounded("speed-limit ratio <= 1 over 200 random draws",
                          max_ratio - 1.0, 1e-5));
    out.push_back(bounded("path length >= |delta_c| over the same draws",
                          worst_margin, 1e-6));
  }

  {
    // Markovian equal-population dephasing saturates the bound.
    const DensityMatrix rho0 = qubit_from_theta(kPi / 2.0);
    const RateModel rate = ConstantRate{2.0};
    double worst = 0.0;
    for (const double tau : {0.25, 0.5, 1.0, 2.0}) {
      const int steps = std::max(16, static_cast<int>(std::ceil(4000.0 * tau)));
      const QslReport rep =
          tau_csl(integrate_master(rho0, DephasingChannel{0.0, rate}, tau, steps));
      worst = std::max(worst, std::abs(rep.ratio - 1.0));
    }
    out.push_back(bounded("dephasing saturation, theta=pi/2, gamma=2", worst, 1e-4));
  }

  {
    // Super-Ohmic rate: positive before omega_c t = 1, negative after.
    const RateModel rate = OhmicZeroTRate{4.0, 1.0};
    const bool sign_ok = gamma_at(rate, 0.5) > 0.0 && gamma_at(rate, 1.05) < 0.0;
    const double at_one = std::abs(gamma_at(rate, 1.0));
    CheckResult c = bounded("super-Ohmic k=4 rate sign change at t=1", at_one, 1e-12);
    c.pass = c.pass && sign_ok;
    out.push_back(c);

    // Saturated while the rate keeps its sign, broken once it flips.
    RunConfig cfg;
    cfg.rate = rate;
    cfg.omega0 = 0.0;
    double worst_sat = 0.0;
    for (const double tau : {0.25, 0.5, 1.0}) {
      cfg.tau = tau;
      worst_sat = std::max(worst_sat, std::abs(run_qsl(cfg).ratio - 1.0));
    }
    out.push_back(bounded("super-Ohmic dephasing saturation for tau <= 1", worst_sat, 1e-3));
    cfg.tau = 2.0;
    const double broken = run_qsl(cfg).ratio;
    CheckResult brk = bounded("super-Ohmic dephasing unsaturated at tau=2",
                              broken, 1.0 - 1e-3);
    out.push_back(brk);

    // Restarting inside the negative-rate window: coherence grows along a
    // geodesic, the bound saturates again.
    cfg.t0 = 1.0;
    cfg.tau = 1.0;
    const Trajectory traj = run_trajectory(cfg);
    const double c0 = std::abs(traj.nodes.front().rho.mat()(0, 1));
    const double c1 = std::abs(traj.nodes.back().rho.mat()(0, 1));
    CheckResult gen = bounded("coherence-generating restart at t0=1 saturates",
                              std::abs(tau_csl(traj).ratio - 1.0), 1e-3);
    gen.pass = gen.pass && c1 > c0;
    out.push_back(gen);
  }

  {
    // Geodesic additivity and the plain triangle inequality.
    std::uniform_real_distribution<double> p_d(0.0, 1.0);
    double worst_split = 0.0;
    for (int n = 0; n < 1000; ++n) {
      const auto [a, b] = random_qubit_pair(rng);
      const auto [total, split] = geodesic_triangle_check(make_geodesic(a, b), p_d(rng));
      worst_split = std::max(worst_split, std::abs(total - split));
    }
    out.push_back(bounded("geodesic triangle equality (1000 pairs)", worst_split, 1e-10));

    double worst_tri = -10.0;
    for (int n = 0; n < 1000; ++n) {
      const DensityMatrix a = random_qubit(rng);
      const DensityMatrix b = random_qubit(rng);
      const DensityMatrix c = random_qubit(rng);
      worst_tri = std::max(worst_tri, angle(a, c) - angle(a, b) - angle(b, c));
    }
    out.push_back(bounded("triangle inequality (1000 triples)", worst_tri, 1e-9));
  }

  {
    // Metric decomposition identity and the dephasing closed forms.
    const RateModel rate = ConstantRate{2.0};
    const double tau = std::log(2.0);
    const int steps = 8192;
    const Trajectory traj = integrate_master(qubit_from_theta(kPi / 3.0),
                                             DephasingChannel{1.0, rate}, tau, steps);
    double worst_rel = 0.0;
    for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
      if (traj.nodes[i].eigenvalues.minCoeff() <= 1e-6) continue;
      const SpeedSample s = decompose_speed(traj, i);
      worst_rel = std::max(worst_rel, std::abs(s.speed * s.speed - s.recomposed) /
                                          std::max(s.speed * s.speed, 1e-12));
    }
    out.push_back(bounded("speed^2 = I_F/4 + 2 I_WY (interior nodes)", worst_rel, 1e-5));

    const Trajectory half = integrate_master(qubit_from_theta(kPi / 2.0),
                                             DephasingChannel{1.0, rate}, tau, steps);
    const SpeedSample mid = decompose_speed(half, static_cast<std::size_t>(steps / 2));
    const double f_ref = fisher_dephasing(0.25, 2.0);
    const double s_ref = skew_dephasing(0.25, 1.0);
    out.push_back(bounded("dephasing closed forms at |rho01| = 1/4",
                          std::max(std::abs(mid.fisher - f_ref), std::abs(mid.skew - s_ref)),
                          1e-6));
  }

  {
    // Second-order affinity expansion: relative residual halves with dt.
    const DensityMatrix rho0 = qubit_from_theta(kPi / 2.0);
    const RateModel rate = ConstantRate{2.0};
    double prev = 0.0;
    double worst_factor = 0.0;
    for (int level = 0; level < 3; ++level) {
      const int steps = 250 << level;
      const Trajectory traj =
          integrate_master(rho0, DephasingChannel{0.0, rate}, 0.5, steps);
      const std::size_t node = static_cast<std::size_t>(steps / 2);
      const auto [lhs, rhs] = affinity_expansion_check(traj, node);
      const double rel = std::abs(lhs - rhs) / rhs;
      if (level > 0) worst_factor = std::max(worst_factor, rel / prev);
      prev = rel;
    }
    out.push_back(bounded("affinity expansion residual halves with dt", worst_factor, 0.62));
  }

  {
    // Markovian dephasing decoheres monotonically; nodes stay physical.
    const RateModel rate = ConstantRate{1.5};
    const Trajectory traj = integrate_master(qubit_from_theta(kPi / 2.0),
                                             DephasingChannel{0.7, rate}, 1.0, 2000);
    double worst_mono = -1.0;
    double worst_phys = 0.0;
    double prev = std::abs(traj.nodes.front().rho.mat()(0, 1));
    for (std::size_t i = 1; i < traj.size(); ++i) {
      const auto& m = traj.nodes[i].rho.mat();
      const double c = std::abs(m(0, 1));
      worst_mono = std::max(worst_mono, c - prev);
      prev = c;
      worst_phys = std::max(worst_phys, std::abs(m.trace().real() - 1.0));
      worst_phys = std::max(worst_phys, (m * m).trace().real() - 1.0);
      worst_phys = std::max(worst_phys, -traj.nodes[i].eigenvalues.minCoeff());
    }
    CheckResult mono = bounded("|rho01| strictly decreasing under constant rate",
                               worst_mono, 0.0);
    mono.pass = worst_mono < 0.0;
    out.push_back(mono);
    out.push_back(bounded("trace, purity and positivity along the grid", worst_phys, 1e-10));
  }

  return out;
}

int print_results(const std::vector<CheckResult>& results, std::ostream& os) {
  int failures = 0;
  for (const auto& r : results) {
    if (!r.pass) ++failures;
    os << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  [measured " << r.residual
       << ", bound " << r.threshold << "]\n";
  }
  os << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed")
     << "\n";
  return failures;
}

}  // namespace cqsl
