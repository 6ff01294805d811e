#pragma once

#include <stdexcept>
#include <string>

namespace dseq {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Raised for matrix classes whose characterization is unknown.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace dseq
