#pragma once

#include <stdexcept>
#include <string>

namespace rice {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A program or valence violates a structural rule (bad renaming, reserved
// name misuse, non-condition iif guard, ...).
class WellFormednessError : public Error {
 public:
  using Error::Error;
};

// A program references names that its valence does not declare.
class SignatureError : public Error {
 public:
  using Error::Error;
};

// Evaluation produced a solution that never bound an out-mode name.
class UnboundOutputError : public Error {
 public:
  using Error::Error;
};

// Text could not be parsed; carries the 1-based line of the offence when
// the input is line oriented (0 when not applicable).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Tensor/vector dimensions do not match a declared shape.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Training could not proceed (degenerate split, empty data, ...).
class TrainingError : public Error {
 public:
  using Error::Error;
};

// The stop/go rule was asked about a state with not exactly one light on.
class IrregularStateError : public Error {
 public:
  using Error::Error;
};

// An external oracle process misbehaved (spawn failure, bad reply, timeout).
class OracleIoError : public Error {
 public:
  using Error::Error;
};

// A slice would discard observables that disagree with the fixed values.
class UnsafeSliceError : public Error {
 public:
  using Error::Error;
};

// A synthesized program had no opinion about an input it was asked about.
class IncompleteExplanationError : public Error {
 public:
  using Error::Error;
};

}  // namespace rice
