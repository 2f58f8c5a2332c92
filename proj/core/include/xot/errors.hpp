#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xot {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition or invariant was violated by the caller.
class ContractError : public Error {
public:
  using Error::Error;
};

class IllegalMoveError : public Error {
public:
  using Error::Error;
};

class UnsolvableError : public Error {
public:
  using Error::Error;
};

class ShapeError : public Error {
public:
  using Error::Error;
};

/// Training produced a non-finite loss or gradient.
class DivergenceError : public Error {
public:
  using Error::Error;
};

class UnsupportedVersionError : public Error {
public:
  using Error::Error;
};

class TaskMismatchError : public Error {
public:
  using Error::Error;
};

class GenerationExhaustedError : public Error {
public:
  using Error::Error;
};

/// Replaying a parsed answer through the environment failed at `step` (1-based).
class ValidationError : public Error {
public:
  ValidationError(std::size_t step, const std::string& what);
  std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

/// Text could not be parsed; `offset` is the byte position where parsing stopped.
class ParseError : public Error {
public:
  ParseError(std::size_t offset, const std::string& what);
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

class TransportError : public Error {
public:
  using Error::Error;
};

class ProtocolError : public Error {
public:
  using Error::Error;
};

} // namespace xot
