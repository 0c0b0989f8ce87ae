#pragma once

#include <stdexcept>
#include <string>

namespace repeater {

/// Projection onto an outcome whose branch amplitude vanishes.
struct ZeroProbabilityBranch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotHermitian : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonFiniteValue : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A printed closed-form expression evaluates to 0/0 at this point.
struct DegenerateFormulaPoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Population reached a truncated Fock state that still couples upward.
struct CutoffInsufficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Closed-form and generic-pipeline engines disagree.
struct EngineMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigInvalid : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace repeater
