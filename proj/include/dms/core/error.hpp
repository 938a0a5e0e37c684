#pragma once

#include <stdexcept>
#include <string>

namespace dms {

// Base of every error thrown by the sandbox libraries.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input with an optional 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A value violates a type invariant or an operation precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An external process broke the scorer or trainer protocol.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// An external process exited nonzero. Carries the tail of its stderr.
class ProcessFailure : public Error {
 public:
  ProcessFailure(const std::string& what, int exit_code, std::string stderr_tail)
      : Error(what + " (exit " + std::to_string(exit_code) + "): " + stderr_tail),
        exit_code_(exit_code),
        stderr_tail_(std::move(stderr_tail)) {}
  int exit_code() const noexcept { return exit_code_; }
  const std::string& stderr_tail() const noexcept { return stderr_tail_; }

 private:
  int exit_code_;
  std::string stderr_tail_;
};

// Workflow configuration rejected at load time.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dms
