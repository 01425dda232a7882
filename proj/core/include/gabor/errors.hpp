#pragma once

#include <stdexcept>
#include <string>

namespace gabor {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A shift or lattice parameter is not an integer multiple of the grid spacing.
class CommensurabilityError : public Error {
 public:
  using Error::Error;
};

class IncompatibleGridsError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimensionError : public Error {
 public:
  using Error::Error;
};

/// <gamma, g> vanishes (or is below the 1e-12 floor).
class DegeneratePairError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

/// Invalid user input: bad parameters, malformed configs, schema mismatch.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The grid is too coarse to resolve a construction; carries the spacing needed.
class ResolutionError : public Error {
 public:
  ResolutionError(const std::string& what, double required_spacing)
      : Error(what), required_spacing_(required_spacing) {}
  double required_spacing() const noexcept { return required_spacing_; }

 private:
  double required_spacing_;
};

/// A test function is too close to the domain edge for the requested lattice shifts.
class BoundaryMarginError : public Error {
 public:
  using Error::Error;
};

}  // namespace gabor
