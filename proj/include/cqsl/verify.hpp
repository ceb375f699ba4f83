#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cqsl {

/// One invariant check: `residual` is the measured quantity, `threshold` the
/// bound it must stay under (after `pass` has folded in any side conditions).
struct CheckResult {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Closed forms against their independent oracles (brute-force grids,
/// reference quadrature, analytic-vs-integrator cross checks).
std::vector<CheckResult> oracle_suite(std::uint64_t seed);

/// Structural invariants: the speed-limit bound, saturation families,
/// geodesic identities, metric decomposition, expansion-order probes.
std::vector<CheckResult> property_suite(std::uint64_t seed);

/// Prints one line per check; returns the number of failures.
int print_results(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace cqsl
