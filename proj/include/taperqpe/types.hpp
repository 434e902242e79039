#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace taperqpe {

template <class Scalar> using RealVector = Eigen::Vector<Scalar, Eigen::Dynamic>;
template <class Scalar> using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar> using ComplexVector = Eigen::Vector<std::complex<Scalar>, Eigen::Dynamic>;
template <class Scalar> using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using Real = double;
using Complex = std::complex<Real>;
using Index = Eigen::Index;

template <class Scalar>
inline constexpr Scalar pi_v = std::numbers::pi_v<Scalar>;

template <class Scalar>
inline std::complex<Scalar> unit_phasor(Scalar angle) {
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace taperqpe
