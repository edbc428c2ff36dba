#pragma once

#include <stdexcept>
#include <string>

namespace dynaut {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: formula text, trace files, fact files, MONA output.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Formula syntax error with a 1-based source position.
class ParseError : public InputError {
 public:
  ParseError(std::string message, int line, int column)
      : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// An external program (MONA) could not be run or failed.
class ExternalToolError : public Error {
 public:
  using Error::Error;
};

}  // namespace dynaut
