#pragma once

#include <stdexcept>
#include <string>

namespace musielak {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (negative t, s outside (0,1), non-finite input, box too small, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidNFunction : public Error {
 public:
  using Error::Error;
};

/// A closed-form expression produced a non-finite value at a grid node.
class SamplingError : public Error {
 public:
  SamplingError(const std::string& what, std::size_t node)
      : Error(what), node_(node) {}
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

/// A translation vector is not an integer multiple of the grid spacing.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// The grid is too coarse for the requested operation (e.g. eps < 2h).
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// A modular stays infinite for every scaling: the function is not in the space.
class NotInSpace : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

}  // namespace musielak
