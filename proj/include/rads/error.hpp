#pragma once

#include <stdexcept>
#include <string>

namespace rads {

// Base class for every validation/runtime failure raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Schedule-DSL failure with a source location (1-based line and column).
class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& message)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(col) +
              ": " + message),
        line(line),
        col(col),
        message(message) {}

  int line;
  int col;
  std::string message;
};

}  // namespace rads
