#pragma once

#include <stdexcept>
#include <string>

namespace ssekit {

/// Base of every error the toolkit raises. `exit_code()` is the process
/// status the CLI reports for it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept = 0;
};

/// Malformed matrix or chain input.
class ParseError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// Input outside an operation's domain (wrong shape, negative entries,
/// reducible matrix where irreducibility is required, ...).
class DomainError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

class ShapeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A claimed identity (A = CD, chain linkage, map well-definedness) is false.
class VerificationError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

/// An internal self-check failed. Reaching this is a bug in the toolkit.
class InvariantViolation : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

}  // namespace ssekit
