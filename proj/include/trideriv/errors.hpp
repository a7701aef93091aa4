#pragma once

#include <stdexcept>
#include <string>

namespace trideriv {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class GroupMismatch : public Error {
 public:
  using Error::Error;
};

/// Input text could not be turned into a trinomial or polynomial.
class ParseError : public Error {
 public:
  using Error::Error;
};

class MonomialCountError : public ParseError {
 public:
  using ParseError::ParseError;
};

class IndexError : public ParseError {
 public:
  using ParseError::ParseError;
};

class ExponentError : public ParseError {
 public:
  using ParseError::ParseError;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

class LinearTermError : public Error {
 public:
  using Error::Error;
};

class VariableSetMismatch : public Error {
 public:
  using Error::Error;
};

class ZeroPolynomial : public Error {
 public:
  using Error::Error;
};

class BetaPatternError : public Error {
 public:
  using Error::Error;
};

class FamilyConditionError : public Error {
 public:
  using Error::Error;
};

class ZeroDerivation : public Error {
 public:
  using Error::Error;
};

class IllDefinedDerivation : public Error {
 public:
  using Error::Error;
};

class NotInKernel : public Error {
 public:
  using Error::Error;
};

class NotHomogeneousScalar : public Error {
 public:
  using Error::Error;
};

class PreconditionNotVerified : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace trideriv
