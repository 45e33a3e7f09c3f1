#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpagrade {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured cap (cycle count, coset count, block size) was exceeded.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace lpagrade
