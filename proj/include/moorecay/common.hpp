#pragma once

#include <stdexcept>
#include <string>

namespace moorecay {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Multiplication-table validation failures. Messages name the offending
// cell or triple.
class NotLatinSquareError : public Error {
 public:
  using Error::Error;
};

class NotAssociativeError : public Error {
 public:
  using Error::Error;
};

class NoIdentityError : public Error {
 public:
  using Error::Error;
};

// Raised when a group exceeds the order cap of an exponential-time
// operation (automorphism or isomorphism search).
class CapExceededError : public Error {
 public:
  using Error::Error;
};

class SizeCapExceededError : public Error {
 public:
  using Error::Error;
};

class InvalidParametersError : public Error {
 public:
  using Error::Error;
};

class InvalidGeneratorSetError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class OrderCapExceededError : public Error {
 public:
  using Error::Error;
};

// File-format violations; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace moorecay
