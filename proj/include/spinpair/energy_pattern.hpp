// Level structure of the two-spin system under one of the two models.

#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spinpair {

enum class Model { qsm, lshv };

inline const char* to_string(Model m) { return m == Model::qsm ? "qsm" : "lshv"; }

struct EnergyLevel {
  double energy_mev;
  int degeneracy;
  std::string label;
};

/// Levels in strictly ascending energy whose degeneracies add up to the four
/// states of the two-spin space.
class EnergyPattern {
 public:
  static constexpr int kStateCount = 4;

  EnergyPattern(Model model, std::vector<EnergyLevel> levels)
      : model_(model), levels_(std::move(levels)) {
    if (levels_.empty()) throw std::invalid_argument("EnergyPattern: no levels");
    int total = 0;
    for (std::size_t k = 0; k < levels_.size(); ++k) {
      if (levels_[k].degeneracy < 1) {
        throw std::invalid_argument("EnergyPattern: degeneracy must be >= 1");
      }
      if (k > 0 && !(levels_[k].energy_mev > levels_[k - 1].energy_mev)) {
        throw std::invalid_argument("EnergyPattern: energies must be strictly ascending");
      }
      total += levels_[k].degeneracy;
    }
    if (total != kStateCount) {
      throw std::invalid_argument("EnergyPattern: degeneracies sum to " + std::to_string(total) +
                                  ", expected 4");
    }
  }

  Model model() const { return model_; }
  const std::vector<EnergyLevel>& levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }
  const EnergyLevel& operator[](std::size_t k) const { return levels_[k]; }

  /// Largest |E|, used as the scale for merge tolerances.
  double energy_scale() const {
    double s = 0;
    for (const auto& l : levels_) s = std::max(s, l.energy_mev < 0 ? -l.energy_mev : l.energy_mev);
    return s;
  }

 private:
  Model model_;
  std::vector<EnergyLevel> levels_;
};

}  // namespace spinpair
