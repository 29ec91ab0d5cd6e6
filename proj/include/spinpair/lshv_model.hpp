// Separable (Bell-local) hidden-variable description of the pair.
//
// Each particle carries its own two levels at -3/2 alpha and +3/2 alpha. The
// hidden variables only decide which spin outcome owns which level, so every
// thermodynamic quantity here is independent of that choice and of the
// measurement axes.

#pragma once

#include <spinpair/energy_pattern.hpp>
#include <spinpair/units.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>

namespace spinpair {

enum class Outcome { plus, minus };

inline int sign(Outcome o) { return o == Outcome::plus ? +1 : -1; }

inline constexpr std::array<Outcome, 2> kOutcomes{Outcome::plus, Outcome::minus};

/// Single-particle level assignment. The level values are always
/// {-1.5 alpha, +1.5 alpha}; `swapped` moves the ground level from the +1
/// outcome to the -1 outcome.
class LevelAssignment {
 public:
  LevelAssignment(double alpha_mev, int particle, bool swapped = false);

  int particle() const { return particle_; }
  bool swapped() const { return swapped_; }
  double eps_plus() const { return eps_plus_; }
  double eps_minus() const { return eps_minus_; }
  double energy(Outcome o) const { return o == Outcome::plus ? eps_plus_ : eps_minus_; }
  double ground_energy() const { return std::min(eps_plus_, eps_minus_); }
  Outcome ground_outcome() const { return eps_plus_ <= eps_minus_ ? Outcome::plus : Outcome::minus; }
  const std::string& hidden_label(Outcome o) const {
    return o == Outcome::plus ? hidden_label_plus_ : hidden_label_minus_;
  }

 private:
  int particle_;
  bool swapped_;
  double eps_plus_;
  double eps_minus_;
  std::string hidden_label_plus_;
  std::string hidden_label_minus_;
};

LevelAssignment default_assignment(double alpha_mev, int particle);

/// Axis labels for particles 1 and 2. Carried through, never used numerically.
struct MeasurementAxes {
  std::string a_hat = "a";
  std::string b_hat = "b";
};

/// p(r, q) over {+1, -1}^2. Construction checks normalization and that the
/// table factorizes into its marginals, both to 1e-12.
class JointOutcomeTable {
 public:
  explicit JointOutcomeTable(const std::array<double, 4>& cells);

  /// Cells ordered (+,+), (+,-), (-,+), (-,-).
  static std::size_t index(Outcome r, Outcome q) {
    return 2 * (r == Outcome::minus) + (q == Outcome::minus);
  }

  double operator()(Outcome r, Outcome q) const { return cells_[index(r, q)]; }
  const std::array<double, 4>& cells() const { return cells_; }
  double marginal_first(Outcome r) const;
  double marginal_second(Outcome q) const;
  /// E[rq] - E[r] E[q] with r, q = +-1.
  double covariance() const;

 private:
  std::array<double, 4> cells_;
};

/// ln z^(i), z^(i) = e^{-3/2 alpha beta} + e^{+3/2 alpha beta}.
double single_particle_log_partition(double alpha_mev, double beta);
double single_particle_log_partition(const LevelAssignment& a, double beta);

/// mu_1 = -(1/beta) ln z^(1); -1.5 alpha in the quantum limit.
double chemical_potential_lshv(const CouplingParams& params);
double chemical_potential_lshv(const LevelAssignment& a, const Beta& beta);

/// Boltzmann probability of one spin outcome of one particle.
double individual_probability(const LevelAssignment& a, double beta, Outcome outcome);

/// p(r, q) = p_r^(1) p_q^(2).
JointOutcomeTable joint_probability_table(const LevelAssignment& a1, const LevelAssignment& a2,
                                          const MeasurementAxes& axes, double beta);

/// ln(z^(1) z^(2)) = ln(e^{-3x} + e^{3x} + 2).
double pair_log_partition_lshv(double alpha_mev, double beta);

/// Three levels: -3 alpha (1), 0 (2), +3 alpha (1).
EnergyPattern lshv_pattern(double alpha_mev);

/// Pair pattern obtained by summing every combination of the two particles'
/// levels and grouping equal sums (within 1e-12 of the energy scale).
EnergyPattern pattern_from_assignments(const LevelAssignment& a1, const LevelAssignment& a2);

struct JointCounts {
  std::array<std::uint64_t, 4> cells{};  // same order as JointOutcomeTable

  std::uint64_t total() const { return cells[0] + cells[1] + cells[2] + cells[3]; }
  double empirical_covariance() const;
};

/// n draws from the table by inverse CDF over its four cells.
JointCounts sample_joint(const JointOutcomeTable& table, std::uint64_t n, std::uint64_t seed);

}  // namespace spinpair
