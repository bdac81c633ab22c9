#pragma once

#include <stdexcept>
#include <string>

namespace hexband {

/// Raised when an input violates a precondition (nonpositive length, empty window, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// k hits a point where sin(ℓk) vanishes for some edge; the closed forms are undefined there.
class DirichletPointError : public std::runtime_error {
 public:
  DirichletPointError(const std::string& what, double k) : std::runtime_error(what), k_(k) {}
  double k() const noexcept { return k_; }

 private:
  double k_;
};

/// An operation defined for irrational ratios was handed a rational one. Gap centres then sit
/// at commensurability points; use the flat-band / rational machinery instead.
class RationalRatioError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Numerical procedure failed to produce a trustworthy value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hexband
