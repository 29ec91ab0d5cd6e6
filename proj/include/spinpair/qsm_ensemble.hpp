// Quantum-statistical description of the coupled pair: thermal state,
// partition functions, entropy and the whole-system chemical potential.
//
// Scalar thermodynamics work in the dimensionless control x = alpha * beta
// and return logarithms of partition functions; dense matrices are only built
// for |x| <= kDenseExpGuard.

#pragma once

#include <spinpair/energy_pattern.hpp>
#include <spinpair/operator_core.hpp>
#include <spinpair/units.hpp>

#include <array>

namespace spinpair {

/// Trace-one, Hermitian, positive semidefinite 4x4 matrix. Construction
/// checks all three properties to 1e-12.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix<double> m);

  const ComplexMatrix<double>& matrix() const { return m_; }

  /// <psi| rho |psi>
  double fidelity(const TwoSpinState<double>& psi) const;

 private:
  ComplexMatrix<double> m_;
};

/// ln z with z = e^{3x} + 3 e^{-x}.
double pair_partition_qsm(double x);

/// Occupation of (singlet, triplet, triplet, triplet): e^{3x}/z and e^{-x}/z.
std::array<double, 4> qsm_populations(double x);

/// rho = 1/4 (1 - sigma1.sigma2 S(x)); requires |x| <= 300.
DensityMatrix density_matrix_qsm(double x);

/// rho_QM = 1/4 (1 - sigma1.sigma2), the singlet projector.
DensityMatrix quantum_limit_density();

/// Von Neumann entropy S/k from the four populations. +inf x gives 0.
double entropy_over_k(double x);

/// mu_1 = mu_2 = -(1/2beta) ln z = -3/2 alpha - (1/2beta) ln(1 + 3 e^{-4x}).
/// Exactly -1.5 alpha in the quantum limit.
double chemical_potential_qsm(const CouplingParams& params);

/// ln Z = N ln z for N independent pairs (N may be fractional).
double ensemble_log_partition(double ln_z, double n_pairs);

/// ln Z with N = (n1 + n2) / 2, the form differentiated per species.
double ensemble_log_partition(double ln_z, double n1, double n2);

/// Singlet at -3 alpha, triplet (three states) at +alpha.
EnergyPattern qsm_pattern(double alpha_mev);

}  // namespace spinpair
