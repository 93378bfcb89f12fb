#pragma once

#include <stdexcept>
#include <string>

namespace liplab {

// Bad input: malformed descriptors, out-of-domain parameters, foreign points.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The space lacks a structure the caller asked for (well-order, CB rank, ...).
class CapabilityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A construction needs finer scales than the point representation offers.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// choose/observe called out of order on a session.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace liplab
