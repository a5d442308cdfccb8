#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sarplan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. Line and column are 1-based; 0 means "not applicable".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    std::string out = "parse error";
    if (line > 0) {
      out += " at line " + std::to_string(line);
      if (column > 0) out += ", column " + std::to_string(column);
    }
    return out + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A profile of the wrong robot kind was passed to a kind-specific model.
class TypeMismatchError : public Error {
 public:
  using Error::Error;
};

// Thrown before solving when a cheap bound proves an instance infeasible.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sarplan
