// Dense complex operator algebra for a pair of spin-1/2 particles.
//
// Everything here is header-only and templated on the real scalar type so the
// same routines can be evaluated in double for production and in long double
// when a test wants a tighter reference. Basis ordering for two spins is
// (|++>, |+->, |-+>, |-->), i.e. particle 1 is the slow index of kron().

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace spinpair {

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

enum class SpinAxis { x, y, z };

inline constexpr std::array<SpinAxis, 3> kSpinAxes{SpinAxis::x, SpinAxis::y, SpinAxis::z};

inline const char* to_string(SpinAxis axis) {
  switch (axis) {
    case SpinAxis::x: return "x";
    case SpinAxis::y: return "y";
    case SpinAxis::z: return "z";
  }
  return "?";
}

/// Largest |x| accepted by the dense exponentials; e^{3x} must stay finite.
inline constexpr double kDenseExpGuard = 300.0;

namespace detail {

inline void require_supported_dim(Eigen::Index rows, Eigen::Index cols, const char* what) {
  if (rows != cols || (rows != 2 && rows != 4)) {
    throw std::invalid_argument(std::string(what) + ": expected a 2x2 or 4x4 matrix, got " +
                                std::to_string(rows) + "x" + std::to_string(cols));
  }
}

}  // namespace detail

template <typename Scalar = double>
ComplexMatrix<Scalar> identity(Eigen::Index dim) {
  if (dim != 2 && dim != 4) {
    throw std::invalid_argument("identity: dimension must be 2 or 4");
  }
  return ComplexMatrix<Scalar>::Identity(dim, dim);
}

/// Elementwise max-norm max_ij |m_ij|.
template <typename Derived>
auto max_norm(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

/// Elementwise comparison with an explicit absolute tolerance.
template <typename DerivedA, typename DerivedB, typename Scalar>
bool approx_equal(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                  Scalar abs_tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_norm(a - b) <= abs_tol;
}

template <typename Derived, typename Scalar>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, Scalar abs_tol) {
  return m.rows() == m.cols() && max_norm(m - m.adjoint()) <= abs_tol;
}

template <typename Scalar = double>
ComplexMatrix<Scalar> pauli(SpinAxis axis) {
  using C = std::complex<Scalar>;
  const C i(0, 1);
  ComplexMatrix<Scalar> m(2, 2);
  switch (axis) {
    case SpinAxis::x: m << C(0), C(1), C(1), C(0); break;
    case SpinAxis::y: m << C(0), -i, i, C(0); break;
    case SpinAxis::z: m << C(1), C(0), C(0), C(-1); break;
  }
  return m;
}

/// Kronecker product of two single-spin operators; a acts on particle 1.
template <typename Scalar>
ComplexMatrix<Scalar> kron(const ComplexMatrix<Scalar>& a, const ComplexMatrix<Scalar>& b) {
  if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2) {
    throw std::invalid_argument("kron: both factors must be 2x2 single-spin operators");
  }
  ComplexMatrix<Scalar> out(4, 4);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
    }
  }
  return out;
}

/// sigma_j (x) sigma_j for one axis.
template <typename Scalar = double>
ComplexMatrix<Scalar> axis_coupling(SpinAxis axis) {
  return kron<Scalar>(pauli<Scalar>(axis), pauli<Scalar>(axis));
}

/// The dimensionless Heisenberg operator sigma1 . sigma2 = sum_j sigma_j (x) sigma_j.
/// Eigenvalues: +1 (triplet, three-fold) and -3 (singlet).
template <typename Scalar = double>
ComplexMatrix<Scalar> heisenberg_coupling() {
  ComplexMatrix<Scalar> c = ComplexMatrix<Scalar>::Zero(4, 4);
  for (SpinAxis axis : kSpinAxes) c += axis_coupling<Scalar>(axis);
  return c;
}

/// Normalized two-spin state vector over (|++>, |+->, |-+>, |-->).
template <typename Scalar = double>
class TwoSpinState {
 public:
  using Amplitudes = Eigen::Matrix<std::complex<Scalar>, 4, 1>;

  explicit TwoSpinState(const Amplitudes& amplitudes) : amplitudes_(amplitudes) {
    const Scalar tol = std::max<Scalar>(Scalar(1e-12), 64 * std::numeric_limits<Scalar>::epsilon());
    if (std::abs(amplitudes_.norm() - Scalar(1)) > tol) {
      throw std::invalid_argument("TwoSpinState: amplitudes must have unit norm");
    }
  }

  const Amplitudes& amplitudes() const { return amplitudes_; }
  std::complex<Scalar> operator[](Eigen::Index k) const { return amplitudes_(k); }

  std::complex<Scalar> inner(const TwoSpinState& other) const {
    return amplitudes_.dot(other.amplitudes_);  // conjugates the left operand
  }

  /// |psi><psi| as a 4x4 operator.
  ComplexMatrix<Scalar> projector() const {
    return ComplexMatrix<Scalar>(amplitudes_ * amplitudes_.adjoint());
  }

 private:
  Amplitudes amplitudes_;
};

/// Phi1 = |++>, Phi2 = |-->, Phi3 = (|+-> + |-+>)/sqrt2, Phi4 = (|+-> - |-+>)/sqrt2.
/// The first three are triplet states, the fourth is the singlet.
template <typename Scalar = double>
std::array<TwoSpinState<Scalar>, 4> bell_basis() {
  using A = typename TwoSpinState<Scalar>::Amplitudes;
  using C = std::complex<Scalar>;
  const C r(Scalar(1) / std::sqrt(Scalar(2)));
  const C o(0), one(1);
  return {TwoSpinState<Scalar>(A(one, o, o, o)), TwoSpinState<Scalar>(A(o, o, o, one)),
          TwoSpinState<Scalar>(A(o, r, r, o)), TwoSpinState<Scalar>(A(o, r, -r, o))};
}

template <typename Scalar = double>
TwoSpinState<Scalar> singlet_state() {
  return bell_basis<Scalar>()[3];
}

/// Taylor series with scaling and squaring: exp(m) = (exp(m / 2^s))^(2^s),
/// where s makes the scaled max-norm <= 1/2 and terms are summed until the
/// last one drops below tol in max-norm and below working precision relative to
/// the partial sum (squaring multiplies any truncation error by 2^s). Terms and
/// squarings are carried in long double; repeated squaring otherwise costs
/// several digits once the entries reach ~1e6.
template <typename Scalar>
ComplexMatrix<Scalar> matrix_exp_series(const ComplexMatrix<Scalar>& m, Scalar tol) {
  using Wide = std::conditional_t<(sizeof(Scalar) < sizeof(long double)), long double, Scalar>;
  detail::require_supported_dim(m.rows(), m.cols(), "matrix_exp_series");
  if (!(tol > 0)) throw std::invalid_argument("matrix_exp_series: tol must be positive");
  if (!m.allFinite()) throw std::invalid_argument("matrix_exp_series: non-finite matrix entry");

  const Eigen::Index n = m.rows();
  int squarings = 0;
  Wide norm = static_cast<Wide>(max_norm(m));
  while (norm > Wide(0.5)) {
    norm /= 2;
    ++squarings;
  }
  const ComplexMatrix<Wide> scaled =
      m.template cast<std::complex<Wide>>() / std::ldexp(Wide(1), squarings);

  ComplexMatrix<Wide> term = ComplexMatrix<Wide>::Identity(n, n);
  ComplexMatrix<Wide> sum = term;
  constexpr int kMaxTerms = 200;
  for (int k = 1; k <= kMaxTerms; ++k) {
    term = (term * scaled) / Wide(k);
    sum += term;
    const Wide term_norm = max_norm(term);
    if (term_norm < Wide(tol) &&
        term_norm <= std::numeric_limits<Wide>::epsilon() * max_norm(sum)) {
      break;
    }
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum.template cast<std::complex<Scalar>>();
}

/// S(x) = (e^{2x} - e^{-2x}) / (e^{2x} + 3 e^{-2x}), rewritten in e^{-4|x|} so
/// neither branch overflows. Increases from S(-inf) = -1/3 through S(0) = 0 to S(+inf) = 1.
template <typename Scalar>
Scalar s_coefficient(Scalar x) {
  if (x >= 0) {
    const Scalar t = std::exp(-4 * x);
    return (1 - t) / (1 + 3 * t);
  }
  const Scalar t = std::exp(4 * x);
  return (t - 1) / (t + 3);
}

/// exp(-x sigma1.sigma2) = 1/4 (e^{3x} + 3e^{-x}) (1 - sigma1.sigma2 S(x)).
template <typename Scalar>
ComplexMatrix<Scalar> exp_coupling_closed(Scalar x) {
  if (!std::isfinite(static_cast<double>(x)) || std::abs(x) > Scalar(kDenseExpGuard)) {
    throw std::out_of_range("exp_coupling_closed: |x| = " + std::to_string(static_cast<double>(x)) +
                            " exceeds the dense guard of 300; use the log-domain partition "
                            "functions instead");
  }
  const Scalar prefactor = (std::exp(3 * x) + 3 * std::exp(-x)) / 4;
  const ComplexMatrix<Scalar> one = ComplexMatrix<Scalar>::Identity(4, 4);
  return prefactor * (one - heisenberg_coupling<Scalar>() * s_coefficient(x));
}

template <typename Scalar>
struct Eigensystem {
  RealVector<Scalar> values;       // ascending
  ComplexMatrix<Scalar> vectors;   // column k belongs to values(k)
};

/// Hermitian eigendecomposition with a deterministic gauge: inside each
/// degenerate cluster (gap < 1e-8) vectors are re-orthonormalized in the order
/// the solver returned them, then each vector's first component with modulus
/// above 1e-9 is rotated onto the positive real axis.
template <typename Scalar>
Eigensystem<Scalar> eigensystem_hermitian(const ComplexMatrix<Scalar>& m) {
  detail::require_supported_dim(m.rows(), m.cols(), "eigensystem_hermitian");
  if (!is_hermitian(m, Scalar(1e-10))) {
    throw std::invalid_argument("eigensystem_hermitian: matrix is not Hermitian within 1e-10");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensystem_hermitian: eigensolver did not converge");
  }

  Eigensystem<Scalar> out{solver.eigenvalues(), solver.eigenvectors()};
  const Eigen::Index n = out.values.size();

  Eigen::Index cluster_start = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k > 0 && out.values(k) - out.values(k - 1) >= Scalar(1e-8)) cluster_start = k;
    ComplexVector<Scalar> v = out.vectors.col(k);
    for (Eigen::Index j = cluster_start; j < k; ++j) {
      v -= out.vectors.col(j).dot(v) * out.vectors.col(j);
    }
    v.normalize();
    for (Eigen::Index c = 0; c < n; ++c) {
      if (std::abs(v(c)) > Scalar(1e-9)) {
        v *= std::conj(v(c)) / std::abs(v(c));
        break;
      }
    }
    out.vectors.col(k) = v;
  }
  return out;
}

template <typename Scalar>
ComplexMatrix<Scalar> commutator(const ComplexMatrix<Scalar>& a, const ComplexMatrix<Scalar>& b) {
  return a * b - b * a;
}

}  // namespace spinpair
