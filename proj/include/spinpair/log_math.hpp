// Log-domain helpers for partition functions.

#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <span>

namespace spinpair {

/// ln(sum_k exp(args[k])), shifted by the largest argument.
template <typename Scalar>
Scalar log_sum_exp(std::span<const Scalar> args) {
  if (args.empty()) return -std::numeric_limits<Scalar>::infinity();
  const Scalar top = *std::max_element(args.begin(), args.end());
  if (std::isinf(top)) return top;
  Scalar sum = 0;
  for (Scalar a : args) sum += std::exp(a - top);
  return top + std::log(sum);
}

template <typename Scalar>
Scalar log_sum_exp(std::initializer_list<Scalar> args) {
  return log_sum_exp(std::span<const Scalar>(args.begin(), args.size()));
}

/// p ln p with the 0 ln 0 = 0 convention, evaluated from ln p.
template <typename Scalar>
Scalar p_log_p_from_log(Scalar log_p) {
  const Scalar p = std::exp(log_p);
  return p == 0 ? Scalar(0) : p * log_p;
}

}  // namespace spinpair
