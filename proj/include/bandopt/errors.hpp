#pragma once

#include <stdexcept>
#include <string>

namespace bandopt {

/// Raised when an iterative numeric procedure (quadrature, bracketing,
/// root refinement) cannot reach its requested tolerance. Carries the
/// error bound actually achieved and the name of the stage that failed.
class NumericError : public std::runtime_error {
 public:
  NumericError(std::string stage, std::string what, double achieved_bound)
      : std::runtime_error(stage + ": " + what),
        stage_(std::move(stage)),
        achieved_(achieved_bound) {}

  const std::string& stage() const noexcept { return stage_; }
  double achieved_bound() const noexcept { return achieved_; }

 private:
  std::string stage_;
  double achieved_;
};

/// Unsupported problem class (e.g. zero drift).
class UnsupportedError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bandopt
