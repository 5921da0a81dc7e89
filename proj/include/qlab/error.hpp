#pragma once

#include <stdexcept>
#include <string>

namespace qlab {

// Base of everything the library throws on purpose. The CLI maps the
// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument or input outside an operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operands built over different algebras (a,b).
class ParameterError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Enumeration exceeded its node budget. `progress` records how far it got.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, long long nodes_visited)
      : Error(what), nodes_visited_(nodes_visited) {}
  long long nodes_visited() const noexcept { return nodes_visited_; }

 private:
  long long nodes_visited_;
};

class PrecisionError : public Error {
 public:
  using Error::Error;
};

// Quadrature did not reach its tolerance.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// Internal invariant broken (e.g. odd number of ramified primes).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace qlab
