// Observable consequences of an energy pattern: line positions, thermal
// populations, and whether a photon of a given energy can be absorbed.
//
// Absorption model: a photon within `linewidth` of a line is absorbed with
// probability equal to the population of that line's lower level(s), unit
// line strength, no selection rules. Resonant lines add, capped at 1.

#pragma once

#include <spinpair/energy_pattern.hpp>
#include <spinpair/units.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace spinpair {

struct TransitionLine {
  double gap_mev;
  std::string from_label;
  std::string to_label;
  int multiplicity;                        // sum of deg_i * deg_j over merged level pairs
  std::vector<std::size_t> lower_levels;   // distinct level indices the line starts from
};

/// Upward gaps E_j - E_i, merged when equal to within 1e-12 of the pattern's
/// energy scale, ascending by gap.
std::vector<TransitionLine> transition_lines(const EnergyPattern& pattern);

/// Per-level canonical weights deg e^{-beta E} / sum; all weight on the lowest
/// level in the quantum limit.
std::vector<double> boltzmann_populations(const EnergyPattern& pattern, const Beta& beta);

/// Absorption probability of a single photon.
double absorbs(const EnergyPattern& pattern, const Beta& beta, double photon_mev,
               double linewidth_mev);

struct AbsorptionOutcome {
  std::uint64_t photons_fired = 0;
  std::uint64_t photons_absorbed = 0;
  bool resonant = false;
  double initial_population = 0;  // population of the resonant lower levels
};

/// Each of n photons is absorbed independently with probability absorbs(...).
AbsorptionOutcome simulate_photon_stream(const EnergyPattern& pattern, const Beta& beta,
                                         double photon_mev, double linewidth_mev, std::uint64_t n,
                                         std::uint64_t seed);

/// Same experiment split over `workers` threads, worker w seeded with
/// derive_seed(seed, w). Deterministic for a fixed (seed, workers) pair.
AbsorptionOutcome simulate_photon_stream_parallel(const EnergyPattern& pattern, const Beta& beta,
                                                  double photon_mev, double linewidth_mev,
                                                  std::uint64_t n, std::uint64_t seed,
                                                  unsigned workers);

struct PatternSpectrum {
  EnergyPattern pattern;
  std::vector<TransitionLine> lines;
  std::vector<double> populations;
};

struct DiscriminatingEnergy {
  double energy_mev;
  Model absorbed_by;
};

struct ComparisonReport {
  double alpha_mev;
  Beta beta;
  double linewidth_mev;
  PatternSpectrum qsm;
  PatternSpectrum lshv;
  std::vector<DiscriminatingEnergy> discriminating_energies;  // ascending energy
};

/// Lines of either pattern with no line of the other within the linewidth.
ComparisonReport compare_patterns(const EnergyPattern& qsm_side, const EnergyPattern& lshv_side,
                                  double alpha_mev, const Beta& beta, double linewidth_mev);

/// QSM versus LSHV at coupling alpha. Throws PhysicsGuardError when
/// linewidth >= alpha / 2, where the 3 alpha and 4 alpha lines would merge.
ComparisonReport distinguish(double alpha_mev, const Beta& beta, double linewidth_mev);

}  // namespace spinpair
