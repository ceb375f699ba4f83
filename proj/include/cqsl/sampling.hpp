#pragma once

#include <random>

#include "cqsl/densmat.hpp"

namespace cqsl {

/// Qubit state uniform over the Bloch ball of radius max_radius.
DensityMatrix random_qubit(std::mt19937_64& rng, double max_radius = 1.0);

/// Qubit pair whose angle distance stays away from zero (for distance tests).
std::pair<DensityMatrix, DensityMatrix> random_qubit_pair(std::mt19937_64& rng,
                                                          double min_angle = 1e-3);

}  // namespace cqsl
