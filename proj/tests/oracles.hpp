// Reference computations for the test suites. Nothing here calls the closed
// forms under test; each routine takes a different route to the same number.

#pragma once

#include <spinpair/operator_core.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace spinpair::oracle {

using Matrix = ComplexMatrix<double>;

/// exp(-x m) = sum_k e^{-x lambda_k} |v_k><v_k| using Eigen's solver directly.
inline Matrix exp_by_eigendecomposition(const Matrix& m, double x) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    const auto v = es.eigenvectors().col(k);
    out += std::exp(-x * es.eigenvalues()(k)) * (v * v.adjoint());
  }
  return out;
}

/// Thermal state from the series exponential, normalized by its own trace.
inline Matrix thermal_state_by_series(double x) {
  const Matrix w = matrix_exp_series<double>(-x * heisenberg_coupling<double>(), 1e-13);
  return w / w.trace();
}

/// Ascending eigenvalues of a Hermitian matrix (Eigen directly).
inline std::vector<double> eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

/// -sum p ln p over the eigenvalues of a density matrix.
inline double von_neumann_entropy(const Matrix& rho) {
  double s = 0;
  for (double p : eigenvalues(rho)) {
    if (p > 0) s -= p * std::log(p);
  }
  return s;
}

/// Direct long-double sums of Boltzmann factors.
inline long double z_qsm_direct(long double x) { return std::exp(3 * x) + 3 * std::exp(-x); }
inline long double z_lshv_direct(long double x) { return std::exp(-3 * x) + std::exp(3 * x) + 2; }
inline long double z_single_direct(long double x) { return std::exp(1.5L * x) + std::exp(-1.5L * x); }

/// Chemical potential of species 1 from -(1/beta) d ln Z / d N1 at fixed N2,
/// with ln Z = ((N1 + N2) / 2) ln z, by central difference.
inline double chemical_potential_by_finite_difference(double beta, double ln_z, double n1,
                                                      double n2, double h,
                                                      const std::function<double(double, double, double)>& ln_Z) {
  const double d = (ln_Z(ln_z, n1 + h, n2) - ln_Z(ln_z, n1 - h, n2)) / (2 * h);
  return -d / beta;
}

inline double binomial_sd(double n, double p) { return std::sqrt(n * p * (1 - p)); }

}  // namespace spinpair::oracle
