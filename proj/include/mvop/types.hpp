#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace mvop {

// Build-wide scalar precision, set by the MVOP_REAL cache variable.
#ifndef MVOP_REAL_TYPE
#define MVOP_REAL_TYPE double
#endif
using Real = MVOP_REAL_TYPE;
using Complex = std::complex<Real>;
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Matrix-valued function of y on (0,1).
using MatFn = std::function<Matrix(Real)>;

inline Matrix identity(int n) { return Matrix::Identity(n, n); }
inline Matrix zeros(int n) { return Matrix::Zero(n, n); }

// Largest entry modulus; 0 for an empty matrix.
inline Real max_abs(const Matrix& m) {
    return m.size() == 0 ? Real(0) : m.cwiseAbs().maxCoeff();
}

}  // namespace mvop
