#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace commprof {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A quantity is mathematically undefined for the given input (e.g. modularity of an edgeless graph).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A cooperative deadline expired while an algorithm was running.
class TimeoutError : public Error {
 public:
  using Error::Error;
};

}  // namespace commprof
