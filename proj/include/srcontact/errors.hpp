#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace srcontact {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset()` is the byte offset of the problem.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Evaluation outside the domain of an expression (x/0, sqrt(-1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Value part of a jet matrix is rank deficient.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// A tensor argument violates a required index symmetry.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// Contact or positivity precondition fails at a point.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Invalid manifold description (schema, shape, or expression problems).
class SpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace srcontact
