#pragma once

#include <complex>
#include <string>
#include <tuple>
#include <utility>

#include <Eigen/Dense>

#include "json.hpp"

#include "cqsl/errors.hpp"

namespace cqsl {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kValidationTol = 1e-10;

/// Density matrix validated to be Hermitian, positive semidefinite and
/// unit-trace. Construct through validate_density() or the state factories.
class DensityMatrix {
 public:
  const ComplexMatrix& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  friend DensityMatrix validate_density(const ComplexMatrix&, double);
  explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

/// A state bundled with its eigensystem and principal square root.
/// Eigenvalues are sorted descending and clamped at zero; sqrt * sqrt
/// reconstructs the state to round-off.
struct StateSqrt {
  DensityMatrix rho;
  Eigen::VectorXd eigenvalues;
  ComplexMatrix eigenvectors;  // unitary, columns ordered like eigenvalues
  ComplexMatrix sqrt;          // Hermitian PSD principal root
};

inline ComplexMatrix hermitize(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

/// Checks Hermiticity, positivity and unit trace against `tol`, repairing
/// eigenvalue/trace drift inside the tolerance band. Round-off negative
/// eigenvalues are clamped to zero, the trace renormalized.
DensityMatrix validate_density(const ComplexMatrix& m, double tol = kValidationTol);

StateSqrt sqrt_psd(const DensityMatrix& rho);

/// Quantum affinity Tr(sqrt(a) sqrt(b)), clamped to [0, 1].
double affinity(const StateSqrt& a, const StateSqrt& b);
double affinity(const DensityMatrix& a, const DensityMatrix& b);

/// Angle distance arccos(affinity), in [0, pi/2].
double angle(const StateSqrt& a, const StateSqrt& b);
double angle(const DensityMatrix& a, const DensityMatrix& b);

/// Qubit with populations (1 - sin^2(theta/2), sin^2(theta/2)) and
/// off-diagonal sin(theta/2) cos(theta/2) e^{i phase}.
DensityMatrix qubit_from_theta(double theta, double phase = 0.0);

/// Unitary that maps any qubit state to one with both populations 1/2.
/// The free phase is fixed to Arg(rho01), zero when rho01 vanishes.
std::pair<ComplexMatrix, DensityMatrix> equal_population_transform(const DensityMatrix& rho);

/// Pauli expectation triple (x, y, z) of a qubit state.
std::tuple<double, double, double> bloch_vector(const DensityMatrix& rho);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
DensityMatrix maximally_mixed(Eigen::Index dim);

// Matrix JSON layout: {"dim": n, "entries": [[re, im], ...]} row-major.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// Formats with 17 significant digits, enough to round-trip a double.
std::string to_sig17(double v);

}  // namespace cqsl
