#pragma once

#include <stdexcept>
#include <string>

namespace egtsec {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter set breaks one of the model's ordering/range constraints.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

// A count or index lies outside the population it refers to.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

// The embedded chain has more than one closed class, so no unique
// stationary distribution exists.
class ReducibleChain : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Rejection sampling gave up: the configured ranges (almost) never satisfy
// the ordering constraints.
class InfeasibleRanges : public Error {
 public:
  using Error::Error;
};

}  // namespace egtsec
