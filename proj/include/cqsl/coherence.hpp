#pragma once

#include <vector>

#include "cqsl/densmat.hpp"

namespace cqsl {

/// Populations of a state diagonal in the computational basis.
struct IncoherentState {
  std::vector<double> probs;
};

struct CoherenceValue {
  double c = 0.0;                // skew-information coherence, in [0, 1]
  double addressed_angle = 0.0;  // arccos(sqrt(1 - c)), in [0, pi/2]
};

/// Closed-form coherence 1 - sum_k <k|sqrt(rho)|k>^2 in the computational basis.
CoherenceValue coherence_skew(const StateSqrt& s);
CoherenceValue coherence_skew(const DensityMatrix& rho);

/// Independent oracle: minimizes 1 - A^2(rho, sigma) over a uniform grid of
/// diagonal states. Exhaustive for d=2 (grid_points+1 samples), a coarse
/// simplex scan of about grid_points nodes for d=3.
double coherence_bruteforce(const DensityMatrix& rho, long grid_points = 10000);

/// Populations proportional to the squared diagonals of sqrt(rho).
IncoherentState closest_incoherent(const DensityMatrix& rho);
IncoherentState closest_incoherent(const StateSqrt& s);

DensityMatrix to_density(const IncoherentState& s);

/// Signed addressed-angle change arccos(sqrt(1-C(rho_tau))) - arccos(sqrt(1-C(rho0))).
/// Positive for coherence generation, negative for decoherence.
double delta_c(const StateSqrt& s0, const StateSqrt& s_tau);
double delta_c(const DensityMatrix& rho0, const DensityMatrix& rho_tau);

}  // namespace cqsl
