/**
 * @file families.hpp
 * @brief Concrete weight/operator families packaged as FamilyDescriptor values.
 *
 * Supported families:
 *  - su2(ell):        size 2ell+1, weight exponents (1/2, 1/2), Psi0 = K Upsilon K
 *  - a1(n, m, i):     size 2, exponents (n-1, 0)
 *  - c1(n):           size 2, exponents (2n-3, 1)
 *  - jacobi(a, b):    scalar reference family
 *
 * Exponent convention: alpha goes with (1-y), beta with y.
 */
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvop/krawtchouk.hpp"
#include "mvop/linalg_poly.hpp"

namespace mvop {

/// First-order operator data P -> P'(y B1 + B0) + P A0.
struct FirstOrderOp {
    Matrix B1, B0, A0;
};

struct FamilyDescriptor {
    std::string name;
    std::vector<std::pair<std::string, Real>> params;
    int N = 1;
    Real alpha = 0;
    Real beta = 0;
    MatFn psi0, dpsi0, d2psi0;
    Matrix T;
    /// y(1-y) Psi0' = (S + y R) Psi0, fitted by infer_SR.
    Matrix S, R;
    Real sr_residual = 0;
    Matrix C, U, V;
    MatFn F;
    std::optional<FirstOrderOp> E;
    /// Degree of Psi0 T Psi0^*.
    int wpol_degree = 0;

    Real param(const std::string& key) const;
    /// Short human-readable tag such as su2(ell=3/2) or a1(n=3,m=1,i=2).
    std::string label() const;
};

FamilyDescriptor family_su2(int twoEll);
FamilyDescriptor family_a1(int n, int m, int i);
FamilyDescriptor family_c1(int n);
FamilyDescriptor family_scalar_jacobi(Real alpha, Real beta);

struct SRFit {
    Matrix S, R;
    Real residual = 0;
};

/// Fits y(1-y) Psi0'(y) Psi0(y)^{-1} by S + y R on interior nodes.
SRFit infer_SR(const MatFn& psi0, const MatFn& dpsi0);

/// Psi0 T Psi0^* evaluated pointwise.
Matrix wpol_value(const FamilyDescriptor& fam, const Matrix& T, Real y);

struct EvalPoint {
    Real y;
    Real t;

    static EvalPoint from_y(Real y);
    static EvalPoint from_t(Real t);
};

/// K Upsilon(y) K.
Matrix psi0_su2_krawtchouk(int twoEll, Real y);
Matrix dpsi0_su2_krawtchouk(int twoEll, Real y);
Matrix d2psi0_su2_krawtchouk(int twoEll, Real y);
/// Direct double sum in the angle t, independent of the Krawtchouk factorization.
Matrix phi0_su2_direct(int twoEll, Real t);

/// (ell I - S)/2 and -ell I, the su2 first-order data in closed form.
std::pair<Matrix, Matrix> su2_sr_closed_form(int twoEll);
/// Diagonal of Lambda_d at kappa = 0: -d(2ell+2+d) + i(2ell-i).
Matrix su2_lambda_closed_form(int twoEll, int d);
/// T_ii = binom(2ell,i) (nu)_i / (nu+2ell-i)_i, with kappa = nu - 1.
std::vector<Rational> su2_T_closed_form(int twoEll, const Rational& nu);
/// Same T obtained from the exact off-diagonal ratios of the deformed F.
std::vector<Rational> su2_T_from_F_ratios(int twoEll, const Rational& nu);

/// Corrected a1 F at kappa = 0 as used by family_a1.
Matrix a1_F(int n, int m, int i, Real y);
/// c1 F as displayed for the family.
Matrix c1_F(int n, Real y);

/// Closed-form c1 data at deformation kappa.
MatPoly c1_gamma2_display(int n, Real kappa);
MatPoly c1_gamma1_display(int n, Real kappa);
/// Displayed c1 weight factor; equals 2 Psi0 T Psi0^* at kappa = 0.
Matrix c1_weight_display(int n, Real kappa, Real y);

/// Right-hand side of the su2 Gamma2 closed form at nu = kappa + 1. The term
/// 4y(1-y)(ell+nu)^2/ell^2 enters with sign cross_sign (printed: -1, consistent: +1).
Matrix su2_gamma2_closed_form(int twoEll, Real nu, Real y, Real cross_sign);

}  // namespace mvop
