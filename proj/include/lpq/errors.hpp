#pragma once

#include <stdexcept>
#include <string>

namespace lpq {

// Violated precondition on a caller-supplied value (bad norm bound, rank out
// of range, non-power-of-two dimension, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A bit message that cannot have been produced by the matching encoder.
class CorruptMessage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent experiment configuration (dimension/bound/geometry mismatch).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lpq
