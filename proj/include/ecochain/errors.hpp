#pragma once

#include <stdexcept>
#include <string>

namespace ecochain {

// Bad input: parameters, states or configuration that violate a model constraint.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The numerics could not deliver a result (step underflow, singular system, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ecochain
