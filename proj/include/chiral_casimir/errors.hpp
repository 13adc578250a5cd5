#pragma once

#include <stdexcept>
#include <string>

namespace chiral_casimir {

/// Invalid argument or precondition violation (bad cutoff, non-positive frequency, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed to reach its contract (eigensolver, quadrature, ...).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chiral_casimir
