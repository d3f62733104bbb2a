#pragma once

#include <stdexcept>
#include <string>

namespace gentile {

/// A requested space or matrix exceeds a configured size cap.
class SizingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input lies outside an operation's domain (bad index, occupation > n, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A spectrum was requested for a matrix that is not Hermitian within tolerance.
class NonHermitianError : public std::runtime_error {
 public:
  NonHermitianError(const std::string& what, double asymmetry)
      : std::runtime_error(what), asymmetry_(asymmetry) {}

  double asymmetry() const noexcept { return asymmetry_; }

 private:
  double asymmetry_;
};

}  // namespace gentile
