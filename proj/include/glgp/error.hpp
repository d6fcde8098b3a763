#pragma once

#include <stdexcept>
#include <string>

namespace glgp {

// Raised when a numerical routine cannot deliver its accuracy contract
// (singular system, iteration cap, degenerate spectrum).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterative method stopped at its cap; carries the last estimate.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double last_estimate)
      : NumericalError(what), last_estimate_(last_estimate) {}
  double last_estimate() const noexcept { return last_estimate_; }

 private:
  double last_estimate_;
};

// File parsing and file system failures. Messages carry the path and,
// for parse errors, the 1-based line number.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace glgp
