#pragma once

#include <stdexcept>
#include <string>

namespace sepkit {

// Base class for every error raised by the library. Callers that only need to
// distinguish "bad input" from "internal failure" can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line), message_(what) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

// Argument outside an operation's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// No subset size k satisfies cn < k < (1-c)n.
class InfeasibleBalanceError : public Error {
 public:
  using Error::Error;
};

// A cut that was required to be c-balanced is not.
class BalanceError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Instance larger than an enumeration or solver cap.
class CapError : public Error {
 public:
  using Error::Error;
};

class NotPsdError : public Error {
 public:
  NotPsdError(double min_eigenvalue, double tol)
      : Error("matrix is not PSD: min eigenvalue " + std::to_string(min_eigenvalue) +
              " < -" + std::to_string(tol)),
        min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sepkit
