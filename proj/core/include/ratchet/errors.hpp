#pragma once

#include <stdexcept>
#include <string>

namespace ratchet {

// Raised when a computation leaves its numerically valid range (probabilities
// outside (0,1), explicit-scheme stability violations, exponent overflow,
// truncation-budget overruns, failed convergence). Parameter/usage errors use
// std::invalid_argument instead.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ratchet
