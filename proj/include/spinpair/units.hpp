// Energies are in meV, temperatures in K, inverse temperatures in 1/meV.

#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spinpair {

namespace detail {
inline std::string quote_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}
}  // namespace detail

/// Boltzmann constant in meV/K (CODATA 2018).
inline constexpr double kBoltzmannMeVPerK = 8.617333262e-2;

/// Inverse temperature: either a finite positive value or the quantum limit
/// (beta -> infinity), which is carried as a flag rather than a huge number.
class Beta {
 public:
  static Beta finite(double per_mev) {
    if (!(per_mev > 0) || !std::isfinite(per_mev)) {
      throw std::invalid_argument("beta must be finite and positive, got " + detail::quote_number(per_mev));
    }
    return Beta(per_mev);
  }
  static Beta quantum_limit() { return Beta(std::numeric_limits<double>::infinity()); }

  bool is_quantum_limit() const { return std::isinf(value_); }

  /// Finite value in 1/meV; throws in the quantum limit.
  double value() const {
    if (is_quantum_limit()) throw std::logic_error("Beta::value() called on the quantum limit");
    return value_;
  }

 private:
  explicit Beta(double v) : value_(v) {}
  double value_;
};

/// beta = 1 / (k_B T). `flag` names the option the temperature came from.
inline double beta_from_temperature(double t_k, std::string_view flag = "--temp-k") {
  if (!(t_k > 0) || !std::isfinite(t_k)) {
    throw std::invalid_argument(std::string(flag) +
                                ": temperature must be a positive number of kelvin, got " +
                                detail::quote_number(t_k));
  }
  return 1.0 / (kBoltzmannMeVPerK * t_k);
}

/// Exchange coupling alpha (meV) together with the inverse temperature.
class CouplingParams {
 public:
  CouplingParams(double alpha_mev, Beta beta) : alpha_(alpha_mev), beta_(beta) {
    if (!(alpha_mev > 0) || !std::isfinite(alpha_mev)) {
      throw std::invalid_argument("alpha must be finite and positive, got " + detail::quote_number(alpha_mev));
    }
  }

  double alpha() const { return alpha_; }
  const Beta& beta() const { return beta_; }
  bool is_quantum_limit() const { return beta_.is_quantum_limit(); }

  /// Dimensionless control x = alpha * beta; +inf in the quantum limit.
  double x() const {
    return is_quantum_limit() ? std::numeric_limits<double>::infinity() : alpha_ * beta_.value();
  }

 private:
  double alpha_;
  Beta beta_;
};

}  // namespace spinpair
