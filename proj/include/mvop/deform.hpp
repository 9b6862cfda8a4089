#pragma once

#include <map>
#include <string>

#include "mvop/families.hpp"

namespace mvop {

/// Right-acting P -> y(1-y)P'' + P'(C - yU) - P V.
struct HyperOp {
    Matrix C, U, V;
};

enum class SignConvention { Minus, Plus };

HyperOp base_operator(const FamilyDescriptor& fam);
HyperOp deform_operator(const FamilyDescriptor& fam, Real kappa);
/// Same shift applied to arbitrary (C, U, V).
HyperOp deform_operator(const HyperOp& op, Real kappa);

/// Scalar drift beta+kappa+1 - y(alpha+beta+2kappa+2).
Real drift(const FamilyDescriptor& fam, Real kappa, Real y);

/// Psi0'' recovered from the first-order equation and the fitted (S, R).
Matrix psi0_second_from_ode(const FamilyDescriptor& fam, Real y);

/// Deformed F. Minus: -Psi^{-1}V_k Psi - y(1-y)Psi^{-1}Psi'' - a_k Psi^{-1}Psi'.
/// Plus: F + kappa Psi^{-1}(U+kappa-1)Psi - kappa(1-2y)Psi^{-1}Psi'.
Matrix deform_F(const FamilyDescriptor& fam, Real kappa, Real y, SignConvention sign = SignConvention::Minus);

struct TSolution {
    Matrix T;
    Real tsym_residual = 0;
    bool positive = false;
    std::string method;  ///< "tridiagonal" or "least_squares"
    int nullity = 1;
};

TSolution solve_T(const FamilyDescriptor& fam, Real kappa, SignConvention sign = SignConvention::Minus);

/// max over 50 nodes of |T F^* - F T|_max / |F|_max
Real tsym_residual(const FamilyDescriptor& fam, Real kappa, const Matrix& T,
                   SignConvention sign = SignConvention::Minus);

/// Residuals of Psi0^{-1} D_k Psi0 against y(1-y)f'' + a_k f' + f F_k on f = c and f = y c.
Real conjugation_residual(const FamilyDescriptor& fam, Real kappa, SignConvention sign = SignConvention::Minus);

/// (y(1-y) w)' = a_k w with w = y^{beta+k}(1-y)^{alpha+k}, compared as degree-1 polynomials.
Real scalar_weight_ode_residual(const FamilyDescriptor& fam, Real kappa);

struct DeformedFamily {
    FamilyDescriptor base;
    Real kappa = 0;
    SignConvention sign = SignConvention::Minus;
    Matrix T;
    TSolution tsol;
    HyperOp D;
    MatPoly wpol;  ///< fitted polynomial factor of the weight
    Real wpol_fit_residual = 0;
    Real wpol_fit_scale = 0;
    Real min_eigenvalue = 0;  ///< smallest eigenvalue of Wpol over interior nodes

    Real alpha_k() const { return base.alpha + kappa; }
    Real beta_k() const { return base.beta + kappa; }
    /// Psi0 T Psi0^* pointwise
    Matrix wpol_value(Real y) const;
    /// Derivative of Psi0 T Psi0^* pointwise
    Matrix wpol_derivative(Real y) const;
    MatFn wpol_fn() const;
    Matrix F(Real y) const { return deform_F(base, kappa, y, sign); }
    /// (beta+kappa, alpha+kappa, wpol)
    WeightedMatPoly weight() const { return {beta_k(), alpha_k(), wpol}; }
};

struct DeformationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Full assembly; throws DeformationError if T is not positive or the weight factor is not polynomial.
DeformedFamily deformed_weight(const FamilyDescriptor& fam, Real kappa, SignConvention sign = SignConvention::Minus);

/// Assembly with a prescribed T and operator, no validation (used for perturbation controls).
DeformedFamily deformed_with(const FamilyDescriptor& fam, Real kappa, const Matrix& T, const HyperOp& D);

/// Lazily built deformations of one family at several kappa values.
class DeformationChain {
public:
    explicit DeformationChain(FamilyDescriptor fam, SignConvention sign = SignConvention::Minus)
        : fam_(std::move(fam)), sign_(sign) {}

    const DeformedFamily& at(Real kappa);
    const FamilyDescriptor& family() const { return fam_; }

private:
    FamilyDescriptor fam_;
    SignConvention sign_;
    std::map<Real, DeformedFamily> cache_;
};

}  // namespace mvop
