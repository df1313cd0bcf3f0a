#pragma once

#include <stdexcept>
#include <string>

namespace tightcycle {

// Hard errors are exceptions. Soft failures (a search that ran out of budget,
// a pipeline stage whose thresholds are not met) are returned as values.

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact routine was asked to work above its configured size bound.
class SizeLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally broken cycle: repeated vertex, vertex out of range, or a
/// length that no convention admits.
class MalformedCycle : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PreconditionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class HypothesisViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Something that must be unreachable was reached.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tightcycle
