#pragma once

#include <stdexcept>
#include <string>

namespace degseq {

/// Input could not be parsed or fails basic validation.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Problem size exceeds a configured hard cap (exact mode only).
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A mathematical singularity: zero denominator, bad(...) = 1, zero summation.
struct SingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Quantity is undefined at this point (e.g. probability with N(d) = 0).
struct UndefinedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Evaluation outside a function's declared domain; never extrapolated.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace degseq
