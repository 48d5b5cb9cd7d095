#pragma once

#include <stdexcept>

namespace severi {

// Windows, cutoffs or options that cannot produce the requested coefficients.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments outside the mathematical domain of an operation.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A coefficient was requested outside the truncation window of a series.
class OutOfWindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failed internal consistency checks, corrupt caches, impure coefficients.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace severi
