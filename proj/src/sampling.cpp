#include "cqsl/sampling.hpp"

#include <cmath>

namespace cqsl {

DensityMatrix random_qubit(std::mt19937_64& rng, double max_radius) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double nx = normal(rng), ny = normal(rng), nz = normal(rng);
  double len = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (len < 1e-12) {
    nx = 1.0;
    ny = nz = 0.0;
    len = 1.0;
  }
  const double r = max_radius * std::cbrt(uniform(rng));
  const double x = r * nx / len, y = r * ny / len, z = r * nz / len;
  ComplexMatrix m(2, 2);
  m(0, 0) = 0.5 * (1.0 + z);
  m(1, 1) = 0.5 * (1.0 - z);
  m(0, 1) = 0.5 * Complex(x, -y);
  m(1, 0) = std::conj(m(0, 1));
  return validate_density(m);
}

std::pair<DensityMatrix, DensityMatrix> random_qubit_pair(std::mt19937_64& rng,
                                                          double min_angle) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    DensityMatrix a = random_qubit(rng);
    DensityMatrix b = random_qubit(rng);
    if (angle(a, b) >= min_angle) {
      return {std::move(a), std::move(b)};
    }
  }
  throw Error("random_qubit_pair: could not draw a separated pair");
}

}  // namespace cqsl
