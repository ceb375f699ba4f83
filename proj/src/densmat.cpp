#include "cqsl/densmat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Eigenvalues>

namespace cqsl {
namespace {

double hermitian_deviation(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

DensityMatrix validate_density(const ComplexMatrix& m, double tol) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw DimensionMismatch("validate_density: matrix must be square and non-empty");
  }
  if (hermitian_deviation(m) > std::max(tol, 1e-12)) {
    throw NotHermitian("validate_density: matrix is not Hermitian within tolerance");
  }
  const ComplexMatrix h = hermitize(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success) {
    throw EigenFailure("validate_density: eigendecomposition did not converge");
  }
  const Eigen::Index n = h.rows();
  Eigen::VectorXd vals = es.eigenvalues();  // ascending
  if (vals(0) < -tol) {
    throw NotPositive("validate_density: eigenvalue " + std::to_string(vals(0)) +
                      " below -tolerance");
  }
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > tol) {
    throw TraceDeviation("validate_density: trace " + std::to_string(tr) +
                         " deviates from 1 beyond tolerance");
  }

  // Clean inputs pass through untouched so analytic identities stay bit-stable.
  const bool needs_clamp = vals(0) < -1e-14 || vals(n - 1) > 1.0 + 1e-14;
  const bool needs_renorm = std::abs(tr - 1.0) > 1e-15;
  if (!needs_clamp && !needs_renorm) {
    return DensityMatrix(h);
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    vals(j) = std::clamp(vals(j), 0.0, 1.0);
  }
  ComplexMatrix rebuilt =
      es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  rebuilt = hermitize(rebuilt);
  const double tr2 = rebuilt.trace().real();
  if (tr2 <= 0.0) {
    throw NotPositive("validate_density: state vanished after clamping");
  }
  rebuilt /= tr2;
  return DensityMatrix(std::move(rebuilt));
}

StateSqrt sqrt_psd(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.mat());
  if (es.info() != Eigen::Success) {
    throw EigenFailure("sqrt_psd: eigendecomposition did not converge");
  }
  const Eigen::Index n = rho.dim();
  if (es.eigenvalues()(0) < -1e-10) {
    throw NotPositive("sqrt_psd: state eigenvalue below -1e-10");
  }
  Eigen::VectorXd vals(n);
  ComplexMatrix vecs(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    // Snap dust-level eigenvalues to an exact zero: the square root amplifies
    // solver residue of order eps to sqrt(eps), which would pollute pure states.
    const double v = es.eigenvalues()(n - 1 - j);
    vals(j) = v < 1e-14 ? 0.0 : v;
    vecs.col(j) = es.eigenvectors().col(n - 1 - j);
  }
  ComplexMatrix root = vecs * vals.cwiseSqrt().asDiagonal() * vecs.adjoint();
  root = hermitize(root);
  return StateSqrt{rho, std::move(vals), std::move(vecs), std::move(root)};
}

double affinity(const StateSqrt& a, const StateSqrt& b) {
  if (a.rho.dim() != b.rho.dim()) {
    throw DimensionMismatch("affinity: states have different dimensions");
  }
  const Complex tr = (a.sqrt * b.sqrt).trace();
  return std::clamp(tr.real(), 0.0, 1.0);
}

double affinity(const DensityMatrix& a, const DensityMatrix& b) {
  return affinity(sqrt_psd(a), sqrt_psd(b));
}

double angle(const StateSqrt& a, const StateSqrt& b) {
  if (a.rho.dim() != b.rho.dim()) {
    throw DimensionMismatch("angle: states have different dimensions");
  }
  // arccos(affinity) evaluated through the root chord: for unit-trace states
  // |sqrt(a) - sqrt(b)|_F = 2 sin(angle/2), which stays well-conditioned at
  // coincident states where arccos near 1 amplifies round-off.
  const double chord = (a.sqrt - b.sqrt).norm();
  return 2.0 * std::asin(std::min(1.0, 0.5 * chord));
}

double angle(const DensityMatrix& a, const DensityMatrix& b) {
  return angle(sqrt_psd(a), sqrt_psd(b));
}

DensityMatrix qubit_from_theta(double theta, double phase) {
  const double s = std::sin(0.5 * theta);
  const double c = std::cos(0.5 * theta);
  ComplexMatrix m(2, 2);
  m(0, 0) = 1.0 - s * s;
  m(1, 1) = s * s;
  m(0, 1) = std::polar(s * c, phase);
  m(1, 0) = std::conj(m(0, 1));
  return validate_density(m);
}

std::pair<ComplexMatrix, DensityMatrix> equal_population_transform(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    throw DimensionMismatch("equal_population_transform: qubit states only");
  }
  const Complex r01 = rho.mat()(0, 1);
  const double phi = std::abs(r01) > 0.0 ? std::arg(r01) : 0.0;
  const Complex ie = Complex(0.0, 1.0) * std::polar(1.0, phi);
  const double inv = 1.0 / std::sqrt(2.0);
  ComplexMatrix u(2, 2);
  u(0, 0) = inv;
  u(0, 1) = inv * ie;
  u(1, 0) = inv;
  u(1, 1) = -inv * ie;
  ComplexMatrix out = u * rho.mat() * u.adjoint();
  return {u, validate_density(out)};
}

std::tuple<double, double, double> bloch_vector(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    throw DimensionMismatch("bloch_vector: qubit states only");
  }
  const auto& m = rho.mat();
  const double x = 2.0 * m(0, 1).real();
  const double y = -2.0 * m(0, 1).imag();
  const double z = (m(0, 0) - m(1, 1)).real();
  return {x, y, z};
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

DensityMatrix maximally_mixed(Eigen::Index dim) {
  ComplexMatrix m = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
  return validate_density(m);
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      entries.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  return nlohmann::json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  const auto dim = j.at("dim").get<Eigen::Index>();
  const auto& entries = j.at("entries");
  if (dim <= 0 || entries.size() != static_cast<std::size_t>(dim * dim)) {
    throw ConfigError("matrix json: entries must hold dim^2 [re, im] pairs");
  }
  ComplexMatrix m(dim, dim);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c, ++k) {
      const auto& e = entries.at(k);
      m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

std::string to_sig17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace cqsl
