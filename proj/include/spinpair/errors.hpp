#pragma once

#include <stdexcept>

namespace spinpair {

// Plain argument/domain problems are reported with std::invalid_argument and
// std::out_of_range. The two types below map to distinct CLI exit codes.

/// A physically meaningful guard was violated (e.g. a linewidth wide enough to
/// merge the lines that tell the two models apart).
class PhysicsGuardError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Output could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spinpair
