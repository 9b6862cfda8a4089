#pragma once

#include <string>
#include <vector>

#include "mvop/linalg_poly.hpp"

namespace mvop {

/// Gauss–Jacobi rule on [0,1] for the weight y^beta (1-y)^alpha.
struct QuadRule {
    Real alpha = 0;
    Real beta = 0;
    std::vector<Real> nodes;
    std::vector<Real> weights;

    int order() const { return static_cast<int>(nodes.size()); }
};

QuadRule gauss_jacobi_rule(Real alpha, Real beta, int order);

/// B(beta+1, alpha+1), the total mass of the rule.
Real jacobi_mass(Real alpha, Real beta);

/// Rule order used by the engine for polynomials up to degree dmax.
int default_order(int dmax, int wpol_degree);

/// A rule together with the polynomial weight factor evaluated at its nodes.
struct WeightedRule {
    QuadRule rule;
    std::vector<Matrix> wpol;

    WeightedRule() = default;
    WeightedRule(QuadRule r, const MatFn& wpol_fn);
};

/// sum_i w_i P(y_i) Wpol(y_i) Q(y_i)^*
Matrix matrix_inner_product(const MatPoly& P, const MatPoly& Q, const MatFn& wpol, const QuadRule& rule);
Matrix matrix_inner_product(const MatPoly& P, const MatPoly& Q, const WeightedRule& wr);

/// "node,weight" rows with a header line.
std::string rule_csv(const QuadRule& rule);

}  // namespace mvop
