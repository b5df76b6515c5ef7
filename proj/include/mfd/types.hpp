#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Core>

#include "mfd/rational.hpp"

namespace mfd {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<std::int64_t>;
using IntVector = Vector<std::int64_t>;
using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;
using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Group elements are coordinate vectors reduced modulo the invariant factors.
using Element = IntVector;

}  // namespace mfd
