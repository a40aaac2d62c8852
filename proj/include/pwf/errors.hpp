#pragma once

#include <stdexcept>
#include <string>

namespace pwf {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong array lengths, unknown names, bad parameters.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Unreadable or unwritable files, unparsable documents.
class IoError : public Error {
 public:
  using Error::Error;
};

/// An infinite product or series could not be truncated within the allowed depth.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_bound)
      : Error(what), best_bound_(best_bound) {}
  double best_bound() const { return best_bound_; }

 private:
  double best_bound_;
};

/// Ill-conditioned or singular spline interpolation system.
class SingularSystemError : public Error {
 public:
  SingularSystemError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

/// A derivative was requested at a breakpoint where the one-sided values differ.
class BreakpointError : public Error {
 public:
  BreakpointError(const std::string& what, double left, double right)
      : Error(what), left_(left), right_(right) {}
  double left() const { return left_; }
  double right() const { return right_; }

 private:
  double left_;
  double right_;
};

/// A spectrum does not decay within the integration span, or has zero norm.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace pwf
