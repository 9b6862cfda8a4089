#include "mvop/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace mvop {

Real jacobi_mass(Real alpha, Real beta) {
    return std::exp(std::lgamma(beta + 1) + std::lgamma(alpha + 1) - std::lgamma(alpha + beta + 2));
}

QuadRule gauss_jacobi_rule(Real alpha, Real beta, int order) {
    if (!(alpha > -1) || !(beta > -1)) throw std::invalid_argument("Jacobi exponents must exceed -1");
    if (order < 1) throw std::invalid_argument("quadrature order must be positive");

    // Jacobi matrix on [-1,1] for (1-x)^a (1+x)^b; y = (x+1)/2 maps 1-x -> 2(1-y), 1+x -> 2y.
    const Real a = alpha, b = beta, ab = a + b;
    RealVector diag(order), sub(std::max(order - 1, 0));
    for (int k = 0; k < order; ++k) {
        if (k == 0) {
            diag(k) = (b - a) / (ab + 2);
        } else {
            const Real s = 2 * k + ab;
            diag(k) = (b * b - a * a) / (s * (s + 2));
        }
    }
    for (int k = 1; k < order; ++k) {
        Real beta2;
        if (k == 1) {
            beta2 = 4 * (1 + a) * (1 + b) / ((2 + ab) * (2 + ab) * (3 + ab));
        } else {
            const Real s = 2 * k + ab;
            beta2 = 4 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1) * (s - 1));
        }
        sub(k - 1) = std::sqrt(beta2);
    }

    Eigen::SelfAdjointEigenSolver<RealMatrix> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw std::runtime_error("Jacobi matrix eigensolver failed");

    QuadRule r{alpha, beta, {}, {}};
    const Real mass = jacobi_mass(alpha, beta);
    for (int k = 0; k < order; ++k) {
        const Real v0 = es.eigenvectors()(0, k);
        r.nodes.push_back((es.eigenvalues()(k) + 1) / 2);
        r.weights.push_back(mass * v0 * v0);
    }
    return r;
}

int default_order(int dmax, int wpol_degree) {
    return std::max(20, dmax + (wpol_degree + 1) / 2 + 5);
}

WeightedRule::WeightedRule(QuadRule r, const MatFn& wpol_fn) : rule(std::move(r)) {
    wpol.reserve(rule.nodes.size());
    for (Real y : rule.nodes) wpol.push_back(wpol_fn(y));
}

Matrix matrix_inner_product(const MatPoly& P, const MatPoly& Q, const MatFn& wpol, const QuadRule& rule) {
    return matrix_inner_product(P, Q, WeightedRule(rule, wpol));
}

Matrix matrix_inner_product(const MatPoly& P, const MatPoly& Q, const WeightedRule& wr) {
    if (P.size() != Q.size()) throw std::invalid_argument("inner product size mismatch");
    Matrix acc = zeros(P.size());
    for (std::size_t i = 0; i < wr.rule.nodes.size(); ++i) {
        const Real y = wr.rule.nodes[i];
        if (wr.wpol[i].rows() != P.size()) throw std::invalid_argument("weight size mismatch");
        acc += wr.rule.weights[i] * (P(y) * wr.wpol[i] * Q(y).adjoint());
    }
    return acc;
}

std::string rule_csv(const QuadRule& rule) {
    std::ostringstream os;
    os.precision(17);
    os << "node,weight\n";
    for (int i = 0; i < rule.order(); ++i) os << rule.nodes[i] << ',' << rule.weights[i] << '\n';
    return os.str();
}

}  // namespace mvop
