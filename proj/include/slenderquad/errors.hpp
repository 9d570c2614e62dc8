#pragma once

#include <stdexcept>
#include <string>

namespace slenderquad {

/// Raised by the Vandermonde solvers when two nodes coincide.
class SingularSystemError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Newton iteration for the near-singular root pair did not converge.
class RootNotFound : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A field point sits on the discretized centerline.
class DivisionByZero : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Adaptive integration could not meet its tolerance. The best available
/// estimate is kept so callers can still report something.
class AccuracyFailure : public std::runtime_error {
public:
  AccuracyFailure(const std::string& what, double best_estimate, double error_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

private:
  double best_estimate_;
  double error_estimate_;
};

}  // namespace slenderquad
