#include "cqsl/metric.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

namespace cqsl {
namespace {

struct Stencil {
  std::size_t a, b, c;
  double wa, wb, wc;  // derivative = (wa f_a + wb f_b + wc f_c) / dt
};

Stencil stencil_for(const Trajectory& traj, std::size_t i) {
  if (traj.size() < 3) {
    throw GridTooCoarse("metric: at least 3 trajectory nodes required");
  }
  const std::size_t last = traj.size() - 1;
  if (i > last) {
    throw InvalidArgument("metric: node index out of range");
  }
  if (i == 0) {
    return {0, 1, 2, -1.5, 2.0, -0.5};
  }
  if (i == last) {
    return {last - 2, last - 1, last, 0.5, -2.0, 1.5};
  }
  return {i - 1, i, i + 1, -0.5, 0.0, 0.5};
}

struct MatchedFrame {
  Eigen::VectorXd sqrt_vals;  // sqrt eigenvalues reordered to the reference
  ComplexMatrix vecs;         // phase-aligned eigenvectors
};

// Pairs `other`'s eigenvectors with the reference node's by maximum overlap
// and fixes phases so <ref_j, out_j> is real positive.
MatchedFrame match_frame(const StateSqrt& ref, const StateSqrt& other) {
  const Eigen::Index n = ref.rho.dim();
  MatchedFrame out{Eigen::VectorXd(n), ComplexMatrix(n, n)};
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Index best_k = -1;
    Complex best_ov = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (used[static_cast<std::size_t>(k)]) continue;
      const Complex ov = ref.eigenvectors.col(j).dot(other.eigenvectors.col(k));
      if (std::abs(ov) > std::abs(best_ov)) {
        best_ov = ov;
        best_k = k;
      }
    }
    if (best_k < 0 || std::norm(best_ov) < 0.5) {
      throw EigenTrackingFailure(
          "decompose_speed: eigenvector correspondence between neighboring "
          "nodes is ambiguous at this grid resolution");
    }
    used[static_cast<std::size_t>(best_k)] = true;
    out.vecs.col(j) = other.eigenvectors.col(best_k) * (std::conj(best_ov) / std::abs(best_ov));
    out.sqrt_vals(j) = std::sqrt(other.eigenvalues(best_k));
  }
  return out;
}

}  // namespace

ComplexMatrix sqrt_derivative(const Trajectory& traj, std::size_t i) {
  const Stencil st = stencil_for(traj, i);
  const double dt = traj.dt();
  ComplexMatrix d = (st.wa * traj.nodes[st.a].sqrt + st.wb * traj.nodes[st.b].sqrt +
                     st.wc * traj.nodes[st.c].sqrt) /
                    dt;
  return hermitize(d);
}

double wy_speed(const Trajectory& traj, std::size_t i) {
  const ComplexMatrix d = sqrt_derivative(traj, i);
  return std::sqrt(std::max(0.0, d.squaredNorm()));  // Tr D^2 = |D|_F^2, D Hermitian
}

SpeedSample decompose_speed(const Trajectory& traj, std::size_t i) {
  const Stencil st = stencil_for(traj, i);
  const double dt = traj.dt();
  const StateSqrt& ref = traj.nodes[i];
  const Eigen::Index n = ref.rho.dim();

  const MatchedFrame fa = match_frame(ref, traj.nodes[st.a]);
  const MatchedFrame fb = match_frame(ref, traj.nodes[st.b]);
  const MatchedFrame fc = match_frame(ref, traj.nodes[st.c]);

  double fisher = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double d = (st.wa * fa.sqrt_vals(j) + st.wb * fb.sqrt_vals(j) +
                      st.wc * fc.sqrt_vals(j)) /
                     dt;
    fisher += 4.0 * d * d;
  }

  const ComplexMatrix udot = (st.wa * fa.vecs + st.wb * fb.vecs + st.wc * fc.vecs) / dt;
  const ComplexMatrix heff = hermitize(Complex(0.0, 1.0) * udot * ref.eigenvectors.adjoint());
  const ComplexMatrix comm = ref.sqrt * heff - heff * ref.sqrt;
  const double skew = std::max(0.0, -0.5 * (comm * comm).trace().real());

  SpeedSample sample;
  sample.t = traj.t[i];
  sample.speed = wy_speed(traj, i);
  sample.fisher = fisher;
  sample.skew = skew;
  sample.recomposed = 0.25 * fisher + 2.0 * skew;
  return sample;
}

double fisher_dephasing(double abs_rho01, double gamma) {
  if (!(abs_rho01 >= 0.0)) {
    throw SingularInput("fisher_dephasing: |rho01| must be >= 0");
  }
  if (abs_rho01 >= 0.5 - 1e-12) {
    throw SingularInput("fisher_dephasing: diverges as |rho01| approaches 1/2");
  }
  const double x2 = abs_rho01 * abs_rho01;
  return 4.0 * x2 * gamma * gamma / (1.0 - 4.0 * x2);
}

double skew_dephasing(double abs_rho01, double omega0) {
  if (!(abs_rho01 >= 0.0) || abs_rho01 > 0.5 + 1e-12) {
    throw SingularInput("skew_dephasing: |rho01| must lie in [0, 1/2]");
  }
  const double arg = std::max(0.0, 0.25 - abs_rho01 * abs_rho01);
  return 0.5 * omega0 * omega0 * (0.5 - std::sqrt(arg));
}

std::pair<double, double> affinity_expansion_check(const Trajectory& traj, std::size_t i) {
  if (traj.size() < 3) {
    throw GridTooCoarse("affinity_expansion_check: at least 3 nodes required");
  }
  if (i < 1 || i + 1 >= traj.size()) {
    throw InvalidArgument("affinity_expansion_check: interior node required");
  }
  const double lhs = 1.0 - affinity(traj.nodes[i], traj.nodes[i + 1]);
  // Speed for the cell [t_i, t_{i+1}]: averaging the node speeds cancels the
  // odd expansion term, leaving a residual second order in dt.
  const double s = 0.5 * (wy_speed(traj, i) + wy_speed(traj, i + 1));
  const double dt = traj.dt();
  return {lhs, 0.5 * s * s * dt * dt};
}

void write_speed_csv(const Trajectory& traj, std::ostream& out) {
  out << "t,speed,fisher,skew,recomposed\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const SpeedSample s = decompose_speed(traj, i);
    out << to_sig17(s.t) << ',' << to_sig17(s.speed) << ',' << to_sig17(s.fisher)
        << ',' << to_sig17(s.skew) << ',' << to_sig17(s.recomposed) << '\n';
  }
}

}  // namespace cqsl
