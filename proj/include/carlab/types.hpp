#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace carlab {

inline constexpr const char* kVersion = "0.1.0";

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// A vector in the one-particle mode space, in user coordinates (the measure
// weight of each mode is NOT folded into the coefficients; see ModeSpace).
using FieldVector = Eigen::VectorXcd;

// Occupation bitmask over modes; mode 0 is the least significant bit.
using BasisState = std::uint32_t;

}  // namespace carlab
