#include <spinpair/spectroscopy.hpp>

#include <spinpair/errors.hpp>
#include <spinpair/log_math.hpp>
#include <spinpair/lshv_model.hpp>
#include <spinpair/qsm_ensemble.hpp>
#include <spinpair/random.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

namespace spinpair {

namespace {

void append_label(std::string& labels, const std::string& label) {
  // labels is a '|'-joined list; skip duplicates
  std::size_t start = 0;
  while (start <= labels.size()) {
    const std::size_t end = std::min(labels.find('|', start), labels.size());
    if (labels.compare(start, end - start, label) == 0 && end - start == label.size()) return;
    start = end + 1;
  }
  labels += labels.empty() ? label : "|" + label;
}

void require_photon_args(double photon_mev, double linewidth_mev) {
  if (!(photon_mev > 0) || !std::isfinite(photon_mev)) {
    throw std::invalid_argument("photon energy must be positive");
  }
  if (!(linewidth_mev > 0) || !std::isfinite(linewidth_mev)) {
    throw std::invalid_argument("linewidth must be positive");
  }
}

bool is_resonant(const TransitionLine& line, double photon_mev, double linewidth_mev) {
  return std::abs(line.gap_mev - photon_mev) <= linewidth_mev;
}

}  // namespace

std::vector<TransitionLine> transition_lines(const EnergyPattern& pattern) {
  struct Pair {
    double gap;
    std::size_t lower, upper;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    for (std::size_t j = i + 1; j < pattern.size(); ++j) {
      pairs.push_back({pattern[j].energy_mev - pattern[i].energy_mev, i, j});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& a, const Pair& b) { return a.gap < b.gap; });

  const double merge_tol = 1e-12 * pattern.energy_scale();
  std::vector<TransitionLine> lines;
  for (const Pair& p : pairs) {
    const int mult = pattern[p.lower].degeneracy * pattern[p.upper].degeneracy;
    if (lines.empty() || std::abs(p.gap - lines.back().gap_mev) > merge_tol) {
      lines.push_back({p.gap, pattern[p.lower].label, pattern[p.upper].label, mult, {p.lower}});
      continue;
    }
    TransitionLine& line = lines.back();
    line.multiplicity += mult;
    append_label(line.from_label, pattern[p.lower].label);
    append_label(line.to_label, pattern[p.upper].label);
    if (std::find(line.lower_levels.begin(), line.lower_levels.end(), p.lower) ==
        line.lower_levels.end()) {
      line.lower_levels.push_back(p.lower);
    }
  }
  return lines;
}

std::vector<double> boltzmann_populations(const EnergyPattern& pattern, const Beta& beta) {
  std::vector<double> pops(pattern.size(), 0.0);
  if (beta.is_quantum_limit()) {
    pops.front() = 1.0;
    return pops;
  }
  const double b = beta.value();
  std::vector<double> log_w;
  log_w.reserve(pattern.size());
  for (const auto& level : pattern.levels()) {
    log_w.push_back(std::log(static_cast<double>(level.degeneracy)) - b * level.energy_mev);
  }
  const double ln_z = log_sum_exp<double>(log_w);
  for (std::size_t k = 0; k < pops.size(); ++k) pops[k] = std::exp(log_w[k] - ln_z);
  return pops;
}

double absorbs(const EnergyPattern& pattern, const Beta& beta, double photon_mev,
               double linewidth_mev) {
  require_photon_args(photon_mev, linewidth_mev);
  const auto pops = boltzmann_populations(pattern, beta);
  double p = 0;
  for (const auto& line : transition_lines(pattern)) {
    if (!is_resonant(line, photon_mev, linewidth_mev)) continue;
    for (std::size_t lower : line.lower_levels) p += pops[lower];
  }
  return std::min(p, 1.0);
}

AbsorptionOutcome simulate_photon_stream(const EnergyPattern& pattern, const Beta& beta,
                                         double photon_mev, double linewidth_mev, std::uint64_t n,
                                         std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("simulate_photon_stream: n must be >= 1");
  AbsorptionOutcome out;
  out.photons_fired = n;
  out.initial_population = absorbs(pattern, beta, photon_mev, linewidth_mev);
  const auto lines = transition_lines(pattern);
  out.resonant = std::any_of(lines.begin(), lines.end(), [&](const TransitionLine& l) {
    return is_resonant(l, photon_mev, linewidth_mev);
  });
  if (!out.resonant) return out;

  const double p = out.initial_population;
  SeededUniform uniform(seed);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (uniform.next() < p) ++out.photons_absorbed;
  }
  return out;
}

AbsorptionOutcome simulate_photon_stream_parallel(const EnergyPattern& pattern, const Beta& beta,
                                                  double photon_mev, double linewidth_mev,
                                                  std::uint64_t n, std::uint64_t seed,
                                                  unsigned workers) {
  if (n < 1) throw std::invalid_argument("simulate_photon_stream: n must be >= 1");
  workers = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(workers, n)));
  std::vector<std::future<AbsorptionOutcome>> parts;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t chunk = n / workers + (w < n % workers ? 1 : 0);
    parts.push_back(std::async(std::launch::async, [&, chunk, w] {
      return simulate_photon_stream(pattern, beta, photon_mev, linewidth_mev, chunk,
                                    derive_seed(seed, w));
    }));
  }
  AbsorptionOutcome total;
  for (auto& f : parts) {
    const AbsorptionOutcome part = f.get();
    total.photons_fired += part.photons_fired;
    total.photons_absorbed += part.photons_absorbed;
    total.resonant = part.resonant;
    total.initial_population = part.initial_population;
  }
  return total;
}

ComparisonReport compare_patterns(const EnergyPattern& qsm_side, const EnergyPattern& lshv_side,
                                  double alpha_mev, const Beta& beta, double linewidth_mev) {
  if (!(linewidth_mev > 0)) throw std::invalid_argument("linewidth must be positive");
  ComparisonReport report{
      alpha_mev,
      beta,
      linewidth_mev,
      {qsm_side, transition_lines(qsm_side), boltzmann_populations(qsm_side, beta)},
      {lshv_side, transition_lines(lshv_side), boltzmann_populations(lshv_side, beta)},
      {}};

  auto collect = [&](const PatternSpectrum& own, const PatternSpectrum& other) {
    for (const auto& line : own.lines) {
      const bool shared = std::any_of(other.lines.begin(), other.lines.end(), [&](const auto& o) {
        return is_resonant(o, line.gap_mev, linewidth_mev);
      });
      if (!shared) report.discriminating_energies.push_back({line.gap_mev, own.pattern.model()});
    }
  };
  collect(report.qsm, report.lshv);
  collect(report.lshv, report.qsm);
  std::sort(report.discriminating_energies.begin(), report.discriminating_energies.end(),
            [](const auto& a, const auto& b) { return a.energy_mev < b.energy_mev; });
  return report;
}

ComparisonReport distinguish(double alpha_mev, const Beta& beta, double linewidth_mev) {
  if (!(alpha_mev > 0)) throw std::invalid_argument("distinguish: alpha must be positive");
  if (!(linewidth_mev > 0)) throw std::invalid_argument("distinguish: linewidth must be positive");
  if (linewidth_mev >= 0.5 * alpha_mev) {
    std::ostringstream msg;
    msg << "--linewidth-mev " << linewidth_mev << " is >= alpha/2 = " << 0.5 * alpha_mev
        << " meV; the 3 alpha and 4 alpha lines would merge";
    throw PhysicsGuardError(msg.str());
  }
  return compare_patterns(qsm_pattern(alpha_mev), lshv_pattern(alpha_mev), alpha_mev, beta,
                          linewidth_mev);
}

}  // namespace spinpair
