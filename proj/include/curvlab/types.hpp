#pragma once

#include <Eigen/Dense>
#include <limits>
#include <stdexcept>
#include <string>

namespace curvlab {

// Extended precision: the three-point family needs exp(alpha^2) for alpha up to ~30.
using Real = long double;
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr Real kInf = std::numeric_limits<Real>::infinity();

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateWitness : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace curvlab
