#pragma once

#include <stdexcept>
#include <string>

namespace gaplab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on a parameter was violated (bad generator parameters,
/// out-of-range arguments, malformed configuration).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (sequence files, sequence specs, config JSON).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A requested table, bitset or transform would exceed its configured budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A value does not fit the fixed-width representation (terms above 2^63-1).
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A query reaches beyond the horizon a precomputed table was built for.
class HorizonError : public Error {
 public:
  using Error::Error;
};

/// Two spectrum entries coincide exactly where a simple spectrum is required.
class CollisionError : public Error {
 public:
  using Error::Error;
};

/// Not enough entries to answer the query.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace gaplab
