#pragma once

#include <stdexcept>
#include <string>

namespace bosecount {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Evaluation requested at a pole (e.g. zeta at s = 1).
class PoleError : public DomainError {
public:
  using DomainError::DomainError;
};

class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_;
};

/// A custom spectrum has no closed-form zeta profile; one must be supplied.
class ProfileUnavailable : public Error {
public:
  using Error::Error;
};

/// Requested energy lies beyond the horizon up to which a spectrum is known.
class SpectrumTruncated : public Error {
public:
  using Error::Error;
};

class AliasingError : public DomainError {
public:
  using DomainError::DomainError;
};

class SectorError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Saddle polynomial root is not unique (energy too small).
class RootError : public Error {
public:
  using Error::Error;
};

}  // namespace bosecount
