#pragma once

#include <stdexcept>
#include <string>

namespace lssl {

/// Bad user input: malformed files, out-of-range parameters, infeasible requests.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical precondition failed inside a solver (non-SPD operator, singular system).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver hit its iteration cap before reaching the requested tolerance.
class NonConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace lssl
