#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ifbc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad length, inadmissible pad, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The numeric problem is undefined for this input (zero norm, no extrema, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested operation has no implementation for this boundary kind.
class Unsupported : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed signal file. `row` is 1-based and counts every physical line.
class ParseError : public Error {
 public:
  ParseError(std::size_t row, const std::string& what)
      : Error("row " + std::to_string(row) + ": " + what), row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

}  // namespace ifbc
