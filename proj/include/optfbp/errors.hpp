#pragma once

#include <stdexcept>
#include <string>

namespace optfbp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sampling geometry violates its invariants (e.g. M would be 0).
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Index outside its valid range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Mismatched array, grid or image dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A shape or phantom escapes the support disk.
class SupportError : public Error {
 public:
  using Error::Error;
};

/// Out-of-range algorithm parameter (window beta, even kernel size, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Malformed file, bad magic/version, or parse failure.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Covariance matrix not positive definite after regularization.
class FactorizationError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration; the message names the offending key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace optfbp
