/**
 * @file linalg_poly.hpp
 * @brief Polynomials in one real variable y with square complex matrix coefficients.
 *
 * Coefficients are stored in the monomial basis: coeffs()[k] multiplies y^k.
 * WeightedMatPoly carries an extra scalar factor y^a (1-y)^b and is closed
 * under differentiation.
 */
#pragma once

#include <vector>

#include "mvop/types.hpp"

namespace mvop {

class MatPoly {
public:
    MatPoly() = default;
    /// Zero polynomial of matrix size n.
    explicit MatPoly(int n);
    /// Trailing exactly-zero coefficients are dropped.
    explicit MatPoly(std::vector<Matrix> coeffs);

    static MatPoly constant(const Matrix& c);
    static MatPoly identity(int n);
    /// c * y^k
    static MatPoly monomial(const Matrix& c, int k);

    int size() const { return n_; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Matrix>& coeffs() const { return coeffs_; }
    /// Coefficient of y^k; zero matrix when k is out of range.
    Matrix coeff(int k) const;
    Matrix leading() const;

    Matrix operator()(Real y) const;
    MatPoly derivative() const;
    /// Entrywise conjugate transpose of every coefficient.
    MatPoly adjoint() const;
    /// y * P
    MatPoly times_y() const;
    /// Largest coefficient entry modulus.
    Real max_abs() const;

    MatPoly& operator+=(const MatPoly& o);
    MatPoly& operator-=(const MatPoly& o);

private:
    void trim();

    int n_ = 0;
    std::vector<Matrix> coeffs_;
};

MatPoly operator+(MatPoly a, const MatPoly& b);
MatPoly operator-(MatPoly a, const MatPoly& b);
MatPoly operator-(const MatPoly& a);
MatPoly operator*(const MatPoly& a, const MatPoly& b);
MatPoly operator*(const Matrix& c, const MatPoly& p);
MatPoly operator*(const MatPoly& p, const Matrix& c);
MatPoly operator*(Complex s, const MatPoly& p);

/// Max coefficient-entry deviation between two polynomials of equal size.
Real coeff_distance(const MatPoly& a, const MatPoly& b);

/// Scalar polynomial c0 + c1 y + ... embedded as c(y) * I_n.
MatPoly scalar_poly(const std::vector<Real>& c, int n);

struct WeightedMatPoly {
    Real a = 0;
    Real b = 0;
    MatPoly P;

    Matrix operator()(Real y) const;
    /// Exact derivative of y^a (1-y)^b P(y), returned with exponents a-1, b-1.
    WeightedMatPoly derivative() const;
    /// Divides out factors y and (1-y) of P while P(0) or P(1) vanish to tol.
    WeightedMatPoly simplified(Real tol = 1e-13) const;
};

struct FitResult {
    MatPoly poly;
    /// Max entrywise deviation at the holdout nodes.
    Real residual = 0;
    /// Max entry modulus over all samples, for callers wanting a relative measure.
    Real scale = 0;
};

struct Sample {
    Real y;
    Matrix value;
};

/// Interpolates the samples with a degree-`degree` polynomial and measures it on the holdout.
FitResult fit_matpoly(const std::vector<Sample>& samples, int degree,
                      const std::vector<Sample>& holdout);

/// Chebyshev points of the first kind mapped to [lo, hi], increasing.
std::vector<Real> chebyshev_nodes(int count, Real lo = 0.1, Real hi = 0.9);
/// Ten points in [lo, hi] disjoint from every chebyshev_nodes set.
std::vector<Real> holdout_nodes(Real lo = 0.1, Real hi = 0.9);

/// Samples f on Chebyshev + holdout nodes in [0.1, 0.9] and fits the given degree.
FitResult fit_function(const MatFn& f, int degree);

}  // namespace mvop
