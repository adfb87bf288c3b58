#pragma once

#include <stdexcept>
#include <string>

namespace stratabound {

// Base class for all input and precondition failures raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A contingency cell carries a negative count.
struct NegativeCountError : Error {
  using Error::Error;
};

// A study arm (or conditioning row) has no observations.
struct EmptyArmError : Error {
  using Error::Error;
};

// A record is missing a component that the requested analysis needs.
struct MissingComponentError : Error {
  using Error::Error;
};

// A standardized effect was requested on a principal stratum of mass zero.
struct EmptyStratumError : Error {
  using Error::Error;
};

// A distribution puts mass on response types excluded by the asserted
// monotonicity constraint.
struct MonotonicityViolatedError : Error {
  using Error::Error;
};

// A sensitivity parameter lies outside its mathematically valid range.
struct ParamOutOfRangeError : Error {
  using Error::Error;
};

// A standardization denominator is zero or negative where a positive value
// is required.
struct DegenerateDenominatorError : Error {
  using Error::Error;
};

// A test statistic has zero sampling variance, so no z-score exists.
struct ZeroVarianceError : Error {
  using Error::Error;
};

// Record layout does not match the schema the operation expects.
struct SchemaMismatchError : Error {
  using Error::Error;
};

// A trajectory region was requested without any outcome condition.
struct EmptyOutcomeSelectorError : Error {
  using Error::Error;
};

// Malformed input file or text.
struct ParseError : Error {
  using Error::Error;
};

// Mutually inconsistent analysis options.
struct ConfigConflictError : Error {
  using Error::Error;
};

}  // namespace stratabound
