#include <spinpair/lshv_model.hpp>

#include <spinpair/log_math.hpp>
#include <spinpair/random.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinpair {

namespace {

constexpr double kTableTol = 1e-12;

void require_positive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite and positive");
  }
}

}  // namespace

LevelAssignment::LevelAssignment(double alpha_mev, int particle, bool swapped)
    : particle_(particle), swapped_(swapped) {
  require_positive(alpha_mev, "alpha");
  if (particle != 1 && particle != 2) {
    throw std::invalid_argument("LevelAssignment: particle must be 1 or 2");
  }
  const double low = -1.5 * alpha_mev;
  const double high = 1.5 * alpha_mev;
  eps_plus_ = swapped ? high : low;
  eps_minus_ = swapped ? low : high;
  const std::string tag = "lambda" + std::to_string(particle);
  hidden_label_plus_ = tag + (swapped ? "+:upper" : "+:lower");
  hidden_label_minus_ = tag + (swapped ? "-:lower" : "-:upper");
}

LevelAssignment default_assignment(double alpha_mev, int particle) {
  return LevelAssignment(alpha_mev, particle, false);
}

JointOutcomeTable::JointOutcomeTable(const std::array<double, 4>& cells) : cells_(cells) {
  double sum = 0;
  for (double p : cells_) {
    if (!(p >= 0 && p <= 1)) throw std::invalid_argument("JointOutcomeTable: entry outside [0, 1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kTableTol) {
    throw std::invalid_argument("JointOutcomeTable: entries do not sum to 1");
  }
  for (Outcome r : kOutcomes) {
    for (Outcome q : kOutcomes) {
      if (std::abs((*this)(r, q) - marginal_first(r) * marginal_second(q)) > kTableTol) {
        throw std::invalid_argument("JointOutcomeTable: table does not factorize");
      }
    }
  }
}

double JointOutcomeTable::marginal_first(Outcome r) const {
  return (*this)(r, Outcome::plus) + (*this)(r, Outcome::minus);
}

double JointOutcomeTable::marginal_second(Outcome q) const {
  return (*this)(Outcome::plus, q) + (*this)(Outcome::minus, q);
}

double JointOutcomeTable::covariance() const {
  double e_rq = 0, e_r = 0, e_q = 0;
  for (Outcome r : kOutcomes) {
    for (Outcome q : kOutcomes) {
      const double p = (*this)(r, q);
      e_rq += sign(r) * sign(q) * p;
      e_r += sign(r) * p;
      e_q += sign(q) * p;
    }
  }
  return e_rq - e_r * e_q;
}

double single_particle_log_partition(const LevelAssignment& a, double beta) {
  require_positive(beta, "beta");
  return log_sum_exp({-beta * a.eps_plus(), -beta * a.eps_minus()});
}

double single_particle_log_partition(double alpha_mev, double beta) {
  return single_particle_log_partition(default_assignment(alpha_mev, 1), beta);
}

double chemical_potential_lshv(const LevelAssignment& a, const Beta& beta) {
  const double ground = a.ground_energy();
  if (beta.is_quantum_limit()) return ground;
  const double b = beta.value();
  const double gap = std::abs(a.eps_minus() - a.eps_plus());
  return ground - std::log1p(std::exp(-b * gap)) / b;
}

double chemical_potential_lshv(const CouplingParams& params) {
  return chemical_potential_lshv(default_assignment(params.alpha(), 1), params.beta());
}

double individual_probability(const LevelAssignment& a, double beta, Outcome outcome) {
  const double ln_z = single_particle_log_partition(a, beta);
  return std::exp(-beta * a.energy(outcome) - ln_z);
}

JointOutcomeTable joint_probability_table(const LevelAssignment& a1, const LevelAssignment& a2,
                                          const MeasurementAxes& axes, double beta) {
  if (axes.a_hat.empty() || axes.b_hat.empty()) {
    throw std::invalid_argument("joint_probability_table: axis labels must be non-empty");
  }
  std::array<double, 4> cells{};
  for (Outcome r : kOutcomes) {
    for (Outcome q : kOutcomes) {
      cells[JointOutcomeTable::index(r, q)] =
          individual_probability(a1, beta, r) * individual_probability(a2, beta, q);
    }
  }
  return JointOutcomeTable(cells);
}

double pair_log_partition_lshv(double alpha_mev, double beta) {
  return 2.0 * single_particle_log_partition(alpha_mev, beta);
}

EnergyPattern lshv_pattern(double alpha_mev) {
  require_positive(alpha_mev, "lshv_pattern: alpha");
  return EnergyPattern(Model::lshv, {{-3.0 * alpha_mev, 1, "both-ground"},
                                     {0.0, 2, "one-up-one-down"},
                                     {3.0 * alpha_mev, 1, "both-excited"}});
}

EnergyPattern pattern_from_assignments(const LevelAssignment& a1, const LevelAssignment& a2) {
  static const char* kLabels[] = {"both-ground", "one-up-one-down", "both-excited"};
  struct Combo {
    double energy;
    int excited;
  };
  std::vector<Combo> combos;
  double scale = 0;
  for (Outcome r : kOutcomes) {
    for (Outcome q : kOutcomes) {
      const double e = a1.energy(r) + a2.energy(q);
      const int excited = (r != a1.ground_outcome()) + (q != a2.ground_outcome());
      combos.push_back({e, excited});
      scale = std::max(scale, std::abs(e));
    }
  }
  std::sort(combos.begin(), combos.end(),
            [](const Combo& l, const Combo& r) { return l.energy < r.energy; });

  std::vector<EnergyLevel> levels;
  for (const Combo& c : combos) {
    if (!levels.empty() && std::abs(c.energy - levels.back().energy_mev) <= 1e-12 * scale) {
      ++levels.back().degeneracy;
    } else {
      levels.push_back({c.energy, 1, kLabels[c.excited]});
    }
  }
  return EnergyPattern(Model::lshv, std::move(levels));
}

double JointCounts::empirical_covariance() const {
  const double n = static_cast<double>(total());
  if (n == 0) return 0.0;
  const double pp = cells[0] / n, pm = cells[1] / n, mp = cells[2] / n, mm = cells[3] / n;
  const double e_rq = pp - pm - mp + mm;
  const double e_r = pp + pm - mp - mm;
  const double e_q = pp - pm + mp - mm;
  return e_rq - e_r * e_q;
}

JointCounts sample_joint(const JointOutcomeTable& table, std::uint64_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_joint: n must be >= 1");
  const auto& p = table.cells();
  std::array<double, 4> cumulative{};
  double running = 0;
  std::size_t last_nonzero = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    running += p[k];
    cumulative[k] = running;
    if (p[k] > 0) last_nonzero = k;
  }

  SeededUniform uniform(seed);
  JointCounts counts;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = uniform.next();
    std::size_t cell = last_nonzero;  // absorbs a cumulative sum that rounds below 1
    for (std::size_t k = 0; k < 4; ++k) {
      if (u < cumulative[k]) {
        cell = k;
        break;
      }
    }
    ++counts.cells[cell];
  }
  return counts;
}

}  // namespace spinpair
