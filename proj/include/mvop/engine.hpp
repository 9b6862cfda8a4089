/**
 * @file engine.hpp
 * @brief Monic matrix orthogonal polynomials and the verification battery built on them.
 *
 * Convention: operators act on the right of row polynomials (P.D), while the
 * inner product <P,Q> = sum w_i P(y_i) Wpol(y_i) Q(y_i)^* is left-linear, so
 * expansion coefficients multiply basis polynomials from the left.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvop/deform.hpp"
#include "mvop/quadrature.hpp"

namespace mvop {

struct MonicSequence {
    std::vector<MatPoly> polys;
    std::vector<Matrix> norms;
    /// max_{d != d'} |<Q_d,Q_d'>| / sqrt(|<Q_d,Q_d>| |<Q_d',Q_d'>|)
    Real cross_residual = 0;
    WeightedRule rule;
};

WeightedRule engine_rule(const DeformedFamily& df, int dmax, int order_override = 0);

MonicSequence monic_mvops(const DeformedFamily& df, int dmax, int order_override = 0);
/// Monic sequence from the Stieltjes recurrence alone (no re-orthogonalization).
MonicSequence monic_by_recurrence(const DeformedFamily& df, int dmax, int order_override = 0);

/// Cosine-normalized cross-Gram residual of an arbitrary sequence.
Real cross_gram_residual(const std::vector<MatPoly>& polys, const WeightedRule& wr);

struct RecurrenceData {
    std::vector<Matrix> B, C;  ///< y Q_d = Q_{d+1} + B_d Q_d + C_d Q_{d-1}
    Real residual = 0;
};

RecurrenceData three_term(const MonicSequence& seq);

MatPoly apply_hyper(const MatPoly& P, const HyperOp& op);
MatPoly apply_first(const MatPoly& P, const FirstOrderOp& op);

struct EigenData {
    std::vector<Matrix> lambdas;
    std::vector<Real> residuals;
    Real max_residual = 0;
};

/// Lambda_d = leading coefficient of Q_d.D, certified on every coefficient.
EigenData eigen_check(const MonicSequence& seq, const HyperOp& op);

using RightOp = std::function<MatPoly(const MatPoly&)>;

/// max_{d,d'} |<Q_d.Op, Q_d'> - <Q_d, Q_d'.Op>| relative to the Cauchy–Schwarz bound.
Real symmetry_check(const MonicSequence& seq, const RightOp& op);

struct GammaPair {
    MatPoly gamma2, gamma1;
    Real residual2 = 0, residual1 = 0;  ///< absolute holdout deviations
    Real scale2 = 0, scale1 = 0;
    Real weight_residual = 0;      ///< y(1-y) Wpol_{k+1} vs Wpol_k Gamma2
    Real derivative_residual = 0;  ///< (W Gamma2)' vs W Gamma1 at coefficient level
};

GammaPair gamma_pair(const DeformedFamily& df, const DeformedFamily& next);

/// P -> P'' Gamma2^* + P' Gamma1^*, the operator a valid shift pair induces.
MatPoly apply_gamma(const MatPoly& P, const GammaPair& gp);

/// max_d |dQ_d^{(k)}/dy - d Q_{d-1}^{(k+1)}| / max(1, |dQ_d/dy|)
Real shift_check(const MonicSequence& seq, const MonicSequence& next);

struct RodriguesResult {
    MatPoly Q;
    Matrix G;
    Real fit_residual = 0;  ///< relative holdout deviation of the quotient fit
};

/// Q_d from d derivatives of W^{(k+d)} divided by W^{(k)}.
RodriguesResult rodrigues(DeformationChain& chain, Real kappa, int d);

struct RaisingReport {
    Real adjoint = 0;  ///< random-pair adjoint identity
    /// G_n^{(k+1)} (G_{n+1}^{(k)})^{-1} Q_{n+1}^{(k)} = dQ_n^{(k+1)} G2^* + Q_n^{(k+1)} G1^*
    Real monic_relation = 0;
    /// same with G_n^{(k)} in front, as printed
    Real monic_relation_printed = 0;
    Real gamma1_from_monic = 0;  ///< G1^* = G_0 G_1^{-1} Q_1
    /// G2^* = G_1^{(k+1)} (G_2^{(k)})^{-1} Q_2^{(k)} - G_1^{(k+1)} G1^{(k+1)*} G1^*
    Real gamma2_from_monic = 0;
    /// G2^* = G_1^{(k)} (G_2^{(k)})^{-1} Q_2^{(k)} - G_0^{(k+1)} (G_1^{(k+1)})^{-1} G1^{(k+1)*} G1^*, as printed
    Real gamma2_from_monic_printed = 0;
};

RaisingReport raising_check(DeformationChain& chain, Real kappa, int dmax, std::uint64_t seed = 20240611);

/// Commutator of a first-order and a hypergeometric operator on {y^k E_rs}, k <= dmax.
Real commutator_residual(const FirstOrderOp& E, const HyperOp& D, int N, int dmax);

struct CommutingReport {
    Real commutator = 0;
    Real eigen = 0;  ///< Q_n.E vs the predicted Lambda_n Q_n
    Real symmetric_same = 0;  ///< against W^{(kappa)}
    Real symmetric_next = 0;  ///< against W^{(kappa+1)}
};

enum class EVariant { Printed, Corrected };

/// D at kappa = nu - 1. Printed: A0 -> A0 + nu(A0+B1), eigenvalue nB1 + A0 + nu(B1+A0).
/// Corrected: A0 -> A0 + kappa B1, eigenvalue nB1 + A0 + kappa B1.
CommutingReport commuting_E_check(int twoEll, Real nu, int dmax, EVariant variant);

struct ScalarShiftReport {
    Real g_plus = 0, g_minus = 0, e_plus = 0, e_minus = 0;
};

ScalarShiftReport scalar_shift_ops(Real alpha, Real beta, int dmax);

}  // namespace mvop
