#pragma once

#include <stdexcept>
#include <string>

namespace fsx {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Index or scale outside what the grid can represent.
struct RangeError : Error {
  using Error::Error;
};

// A function is not negligible where the torus wraps.
struct TruncationError : Error {
  using Error::Error;
};

struct ParameterError : Error {
  using Error::Error;
};

struct SingularMultiplierError : Error {
  using Error::Error;
};

// Scale finer than the grid spacing allows.
struct ResolutionError : Error {
  using Error::Error;
};

// Missing or malformed inputs to an admissibility check or experiment.
struct SpecificationError : Error {
  using Error::Error;
};

struct FormatError : Error {
  using Error::Error;
};

} // namespace fsx
