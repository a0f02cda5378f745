#pragma once

#include <stdexcept>
#include <string>

namespace unruh {

/// Input outside the mathematical domain of an operation (negative r,
/// non-finite values, non-positive masses, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operands whose subsystem layout does not support the requested
/// operation, e.g. tracing Alice out of a matrix that has no Alice factor.
class StructureError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A numerical kernel failed to reach its accuracy target.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace unruh
