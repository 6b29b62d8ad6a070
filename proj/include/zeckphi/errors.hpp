#pragma once

#include <stdexcept>
#include <string>

namespace zeckphi {

// Thrown when a result would exceed the fixed-width integer capacity the
// library works in (64-bit unsigned values; bounded coefficients in Z[phi]).
struct CapacityError : std::overflow_error {
  explicit CapacityError(const std::string& what) : std::overflow_error(what) {}
};

// Thrown when structured input violates one of its documented invariants.
struct ValidationError : std::invalid_argument {
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when arguments lie outside an operation's stated hypothesis.
struct DomainError : std::domain_error {
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Thrown when a statistical fit has too few usable data points.
struct InsufficientDataError : std::runtime_error {
  explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zeckphi
