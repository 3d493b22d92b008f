#pragma once

#include <stdexcept>
#include <string>

namespace fracsym {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Evaluation at a singular point (e.g. r == rho for a kernel).
class SingularityError : public DomainError {
 public:
  explicit SingularityError(const std::string& what) : DomainError(what) {}
};

// Quadrature, extrapolation or iteration failed to converge.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Bad names, flags or malformed input files.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace fracsym
