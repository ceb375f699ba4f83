#include "cqsl/coherence.hpp"

#include <algorithm>
#include <cmath>

namespace cqsl {

CoherenceValue coherence_skew(const StateSqrt& s) {
  double sum = 0.0;
  for (Eigen::Index k = 0; k < s.rho.dim(); ++k) {
    const double d = s.sqrt(k, k).real();
    sum += d * d;
  }
  const double c = std::clamp(1.0 - sum, 0.0, 1.0);
  return CoherenceValue{c, std::acos(std::sqrt(1.0 - c))};
}

CoherenceValue coherence_skew(const DensityMatrix& rho) {
  return coherence_skew(sqrt_psd(rho));
}

double coherence_bruteforce(const DensityMatrix& rho, long grid_points) {
  if (rho.dim() > 3) {
    throw UnsupportedDimension("coherence_bruteforce: grids supported for d <= 3 only");
  }
  if (grid_points < 2) {
    throw InvalidArgument("coherence_bruteforce: grid_points must be >= 2");
  }
  const StateSqrt s = sqrt_psd(rho);
  std::vector<double> diag(static_cast<std::size_t>(rho.dim()));
  for (Eigen::Index k = 0; k < rho.dim(); ++k) {
    diag[static_cast<std::size_t>(k)] = s.sqrt(k, k).real();
  }

  double max_a = 0.0;
  if (rho.dim() == 1) {
    max_a = diag[0];
  } else if (rho.dim() == 2) {
    for (long i = 0; i <= grid_points; ++i) {
      const double q = static_cast<double>(i) / static_cast<double>(grid_points);
      const double a = std::sqrt(q) * diag[0] + std::sqrt(1.0 - q) * diag[1];
      max_a = std::max(max_a, a);
    }
  } else {
    // d = 3: subdivide each simplex edge so the node count is ~grid_points.
    const long g = std::max<long>(2, std::lround(std::sqrt(2.0 * static_cast<double>(grid_points))));
    for (long i = 0; i <= g; ++i) {
      for (long j = 0; j <= g - i; ++j) {
        const double p0 = static_cast<double>(i) / static_cast<double>(g);
        const double p1 = static_cast<double>(j) / static_cast<double>(g);
        const double p2 = std::max(0.0, 1.0 - p0 - p1);
        const double a = std::sqrt(p0) * diag[0] + std::sqrt(p1) * diag[1] +
                         std::sqrt(p2) * diag[2];
        max_a = std::max(max_a, a);
      }
    }
  }
  return std::clamp(1.0 - max_a * max_a, 0.0, 1.0);
}

IncoherentState closest_incoherent(const StateSqrt& s) {
  const auto n = s.rho.dim();
  std::vector<double> probs(static_cast<std::size_t>(n));
  double norm = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double d = s.sqrt(k, k).real();
    probs[static_cast<std::size_t>(k)] = d * d;
    norm += d * d;
  }
  if (norm <= 0.0) {
    throw DegenerateState("closest_incoherent: diagonal of sqrt(rho) vanished");
  }
  for (double& p : probs) {
    p /= norm;
  }
  return IncoherentState{std::move(probs)};
}

IncoherentState closest_incoherent(const DensityMatrix& rho) {
  return closest_incoherent(sqrt_psd(rho));
}

DensityMatrix to_density(const IncoherentState& s) {
  const auto n = static_cast<Eigen::Index>(s.probs.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    m(k, k) = s.probs[static_cast<std::size_t>(k)];
  }
  return validate_density(m);
}

double delta_c(const StateSqrt& s0, const StateSqrt& s_tau) {
  if (s0.rho.dim() != s_tau.rho.dim()) {
    throw DimensionMismatch("delta_c: states have different dimensions");
  }
  return coherence_skew(s_tau).addressed_angle - coherence_skew(s0).addressed_angle;
}

double delta_c(const DensityMatrix& rho0, const DensityMatrix& rho_tau) {
  return delta_c(sqrt_psd(rho0), sqrt_psd(rho_tau));
}

}  // namespace cqsl
