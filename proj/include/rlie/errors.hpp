#pragma once

#include <stdexcept>
#include <string>

namespace rlie {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidModulus : public Error {
 public:
  using Error::Error;
};

class ZeroInverse : public Error {
 public:
  using Error::Error;
};

/// Operands built over different moduli, ranks or truncation degrees.
class MixedContext : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DegreeOutOfRange : public Error {
 public:
  using Error::Error;
};

/// p^n exceeds the configured size limit of the enveloping algebra.
class SizeBound : public Error {
 public:
  using Error::Error;
};

/// The canonical map L -> P(u(L)) is not an isomorphism for the given input.
class EtaFailure : public Error {
 public:
  using Error::Error;
};

class TruncationTooSmall : public Error {
 public:
  using Error::Error;
};

/// An (V0, mu0) input that fails the Eilenberg-Moore laws at its truncation.
class EmLawFailure : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NameError : public ParseError {
 public:
  using ParseError::ParseError;
};

class ModulusError : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace rlie
