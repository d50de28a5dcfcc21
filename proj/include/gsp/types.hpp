#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace gsp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Invalid user input: bad config field, malformed file, out-of-range parameter.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs whose sizes do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative method stopped at its cap, or a matrix that must be
/// invertible is not. `residual` carries the solver's last diagnostic.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

inline void require_size(Index got, Index want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected size " + std::to_string(want) +
                         ", got " + std::to_string(got));
  }
}

}  // namespace gsp
