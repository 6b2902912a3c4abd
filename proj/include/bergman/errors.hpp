#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

// Every failure raised by the library derives from Error so callers can catch
// the family at once; the subclasses map one-to-one onto CLI exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument ranges: non-finite radii, alpha outside (0,1), r >= s, ...
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A point that is not strictly inside the ring it is evaluated on.
class OutOfDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A series hit its hard term cap before meeting the termination criterion.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_term)
      : Error(what), last_term_(last_term) {}
  double last_term() const noexcept { return last_term_; }

 private:
  double last_term_;
};

/// Signals a broken invariant (corrupted series, non-positive J, ...).
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Cholesky breakdown in the quadrature-Gram oracle.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, std::size_t pivot)
      : Error(what), pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

/// Request outside the oracle's declared validity envelope.
class EnvelopeError : public Error {
 public:
  using Error::Error;
};

/// Ill-posed least-squares fit (template term not dominant).
class FitError : public Error {
 public:
  using Error::Error;
};

/// The Zalcman constructor ran out of candidates for a stage.
class ConstructionError : public Error {
 public:
  ConstructionError(const std::string& what, int stage)
      : Error(what), stage_(stage) {}
  int stage() const noexcept { return stage_; }

 private:
  int stage_;
};

}  // namespace bergman
