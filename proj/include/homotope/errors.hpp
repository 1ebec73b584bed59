#pragma once

#include <stdexcept>
#include <string>

namespace homotope {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotAssociative : public Error {
 public:
  using Error::Error;
};

class NotUnital : public Error {
 public:
  using Error::Error;
};

class NotCommutative : public Error {
 public:
  using Error::Error;
};

class NotAnIdeal : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

/// A minimal polynomial failed to split into linear factors over the base field.
class NotSplit : public Error {
 public:
  using Error::Error;
};

/// Trace-form radical needs characteristic 0 or p > dim.
class UnsupportedCharacteristic : public Error {
 public:
  using Error::Error;
};

/// Operation needs a Wedderburn-Malcev lift that the algebra does not carry.
class MissingSplitting : public Error {
 public:
  using Error::Error;
};

/// Input violates a genericity hypothesis (repeated eigenvalues, non-squares, ...).
class GenericityViolation : public Error {
 public:
  using Error::Error;
};

/// A constructed object failed its own verification. Signals a bug, not bad input.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace homotope
