#pragma once

#include <stdexcept>
#include <string>

namespace spartan {

// Precondition violations: dimension mismatches, out-of-range points, bad
// parameter values.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A covariance matrix could not be factorized, or a kernel produced a
// non-finite value.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The slice sampler exceeded its shrinkage limit on some coordinate.
class SamplerStuck : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A benchmark's recorded minimum is above an observed value.
class InconsistentGroundTruth : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spartan
