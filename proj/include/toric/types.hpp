#pragma once

#include <cstdint>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace toric {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<std::int64_t>;
using IntVector = Vector<std::int64_t>;

}  // namespace toric
