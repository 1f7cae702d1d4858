#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace deepnodes {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// series_core
class TDegreeOverflow : public Error { using Error::Error; };
class DivisionByZeroSeries : public Error { using Error::Error; };
class NonExactDivision : public Error { using Error::Error; };
class BadConstantTerm : public Error { using Error::Error; };
class OutOfRange : public Error { using Error::Error; };

// trees
class SizeZero : public Error { using Error::Error; };
class SizeBoundExceeded : public Error { using Error::Error; };
class InvalidMark : public Error { using Error::Error; };

/// Malformed tree or path text; `position()` is the 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// paths
class InvalidPath : public Error { using Error::Error; };

// genfun
class ClosedFormRange : public Error { using Error::Error; };
/// A computed series broke a combinatorial invariant (non-integer count, etc).
class InvariantViolation : public Error { using Error::Error; };

// asymptotics
class DomainError : public Error { using Error::Error; };
class SingularSystem : public Error { using Error::Error; };
class InsufficientOrder : public Error { using Error::Error; };

}  // namespace deepnodes
