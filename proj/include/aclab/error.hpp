#pragma once

#include <stdexcept>
#include <string>

namespace aclab {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed textual input (rationals, points, the function DSL).
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t column)
      : Error(msg + " at 1:" + std::to_string(column + 1)), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Evaluation at a declared pole (e.g. |s|^{-1/2} at s = 0).
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A parameter outside its admissible range.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Work or memory beyond a configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An interval family violating a checker precondition
/// (overlap, regularity below threshold, dimension mismatch).
class FamilyError : public Error {
 public:
  explicit FamilyError(const std::string& msg, long index = -1)
      : Error(msg), index_(index) {}
  long index() const { return index_; }

 private:
  long index_;
};

}  // namespace aclab
