#pragma once

#include <complex>

#include <Eigen/Dense>

namespace anyonlab {

using Real    = double;
using Complex = std::complex<Real>;

using Vec2    = Eigen::Vector2d;
using Vec2c   = Eigen::Vector2cd;
using Mat2    = Eigen::Matrix2d;
using ArrayX  = Eigen::ArrayXd;
using ArrayXc = Eigen::ArrayXcd;

inline constexpr Real kPi = 3.14159265358979323846;

struct ValueDeriv {
  Real value;
  Real deriv;
};

}  // namespace anyonlab
