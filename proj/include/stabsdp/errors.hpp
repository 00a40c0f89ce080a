#pragma once

#include <stdexcept>
#include <string>

namespace stabsdp {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input exceeds a documented scale cap (oracle size, builder size, ...).
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Parameter outside the supported domain (q % 4 != 1, negative order, ...).
class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

// Arithmetic over GF(q) with q not prime is not implemented.
class UnsupportedFieldError : public InvalidParameterError {
 public:
  using InvalidParameterError::InvalidParameterError;
};

// Moment-vector size bound violated by an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Structural misuse of an operation (e.g. S not a subset of T).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed text input; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Structurally well-formed input that violates a declared bound or index range.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Solver breakdown (singular Schur complement, diverging iterates, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace stabsdp
