#pragma once

#include <stdexcept>
#include <string>

namespace fmlab {

// Caller violated a documented precondition (bad prime, horizon exceeded,
// malformed input).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration or construction would exceed its configured cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant failed; the inputs did not describe the situation
// the algorithm was run on.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A serialized certificate or report could not be interpreted.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fmlab
