#pragma once

#include <stdexcept>
#include <string>

namespace qgraph {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document or inconsistent graph data.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Matching conditions or graph data that violate a structural invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A computation failed to converge or hit a numerical precondition.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The request is well-formed but outside what the library supports
/// (e.g. a force on a bond whose potential touches an endpoint).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace qgraph
