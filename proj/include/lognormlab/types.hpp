#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace lognormlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Error taxonomy. Callers distinguish bad inputs from bad specs from
// numeric breakdown from blown resource guards.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : Error {
  using Error::Error;
};
struct SpecError : Error {
  using Error::Error;
};
struct NumericError : Error {
  using Error::Error;
};
struct ResourceError : Error {
  using Error::Error;
};

// sign with sign(0) = 0; the convention used by the sign pairing.
inline double sign_strict(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// sign with sign(0) = +1; used when constructing extreme points of a ball.
inline double sign_pm1(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace lognormlab
