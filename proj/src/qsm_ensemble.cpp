#include <spinpair/qsm_ensemble.hpp>

#include <spinpair/log_math.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinpair {

namespace {

constexpr double kDensityTol = 1e-12;
const double kLn3 = std::log(3.0);

void require_dense_range(double x, const char* what) {
  if (!std::isfinite(x) || std::abs(x) > kDenseExpGuard) {
    throw std::out_of_range(std::string(what) + ": |x| must be <= 300 for dense matrices, got " +
                            std::to_string(x) + "; use the log-domain quantities");
  }
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix<double> m) : m_(std::move(m)) {
  if (m_.rows() != 4 || m_.cols() != 4) {
    throw std::invalid_argument("DensityMatrix: expected a 4x4 matrix");
  }
  if (std::abs(m_.trace() - std::complex<double>(1.0)) > kDensityTol) {
    throw std::invalid_argument("DensityMatrix: trace differs from 1");
  }
  if (!is_hermitian(m_, kDensityTol)) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  const auto eig = eigensystem_hermitian(m_);
  if (eig.values.minCoeff() < -kDensityTol) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  }
}

double DensityMatrix::fidelity(const TwoSpinState<double>& psi) const {
  const auto& v = psi.amplitudes();
  return std::real(v.dot(m_ * v));
}

double pair_partition_qsm(double x) {
  return log_sum_exp({3.0 * x, kLn3 - x});
}

std::array<double, 4> qsm_populations(double x) {
  if (std::isinf(x)) {
    return x > 0 ? std::array<double, 4>{1.0, 0.0, 0.0, 0.0}
                 : std::array<double, 4>{0.0, 1.0 / 3, 1.0 / 3, 1.0 / 3};
  }
  const double ln_z = pair_partition_qsm(x);
  const double singlet = std::exp(3.0 * x - ln_z);
  const double triplet = std::exp(-x - ln_z);
  return {singlet, triplet, triplet, triplet};
}

DensityMatrix density_matrix_qsm(double x) {
  require_dense_range(x, "density_matrix_qsm");
  const ComplexMatrix<double> one = ComplexMatrix<double>::Identity(4, 4);
  return DensityMatrix(0.25 * (one - heisenberg_coupling<double>() * s_coefficient(x)));
}

DensityMatrix quantum_limit_density() {
  const ComplexMatrix<double> one = ComplexMatrix<double>::Identity(4, 4);
  return DensityMatrix(0.25 * (one - heisenberg_coupling<double>()));
}

double entropy_over_k(double x) {
  if (std::isinf(x) && x > 0) return 0.0;
  const double ln_z = pair_partition_qsm(x);
  const double singlet = p_log_p_from_log(3.0 * x - ln_z);
  const double triplet = p_log_p_from_log(-x - ln_z);
  return -(singlet + 3.0 * triplet);
}

double chemical_potential_qsm(const CouplingParams& params) {
  const double alpha = params.alpha();
  if (params.is_quantum_limit()) return -1.5 * alpha;
  const double beta = params.beta().value();
  return -1.5 * alpha - std::log1p(3.0 * std::exp(-4.0 * params.x())) / (2.0 * beta);
}

double ensemble_log_partition(double ln_z, double n_pairs) {
  if (!(n_pairs > 0)) {
    throw std::invalid_argument("ensemble_log_partition: number of pairs must be positive");
  }
  return n_pairs * ln_z;
}

double ensemble_log_partition(double ln_z, double n1, double n2) {
  return ensemble_log_partition(ln_z, 0.5 * (n1 + n2));
}

EnergyPattern qsm_pattern(double alpha_mev) {
  if (!(alpha_mev > 0)) throw std::invalid_argument("qsm_pattern: alpha must be positive");
  return EnergyPattern(Model::qsm, {{-3.0 * alpha_mev, 1, "singlet"}, {alpha_mev, 3, "triplet"}});
}

}  // namespace spinpair
