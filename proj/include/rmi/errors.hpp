#pragma once

#include <stdexcept>
#include <string>

namespace rmi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arities of two operands disagree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A degree-0 generator was supplied, or an operation was asked of the unit ideal.
class UnitIdealError : public Error {
 public:
  using Error::Error;
};

class NotZeroDimensional : public Error {
 public:
  using Error::Error;
};

// An enumeration would visit more lattice points (or cells) than allowed.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

class WrongArity : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Two independent computations of the same quantity disagreed.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rmi
