#include "mvop/deform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace mvop {

namespace {

Matrix inverse(const Matrix& m) {
    Eigen::FullPivLU<Matrix> lu(m);
    if (!lu.isInvertible()) throw std::runtime_error("singular matrix");
    return lu.inverse();
}

std::vector<Real> sample_nodes() {
    std::vector<Real> ys;
    for (int k = 0; k < 50; ++k) ys.push_back(0.1 + 0.8 * (k + 0.5) / 50);
    return ys;
}

}  // namespace

HyperOp base_operator(const FamilyDescriptor& fam) { return {fam.C, fam.U, fam.V}; }

HyperOp deform_operator(const HyperOp& op, Real kappa) {
    const Matrix I = identity(static_cast<int>(op.C.rows()));
    return {op.C + kappa * I, op.U + 2 * kappa * I, op.V + kappa * op.U + kappa * (kappa - 1) * I};
}

HyperOp deform_operator(const FamilyDescriptor& fam, Real kappa) {
    if (kappa < 0) throw std::invalid_argument("kappa must be nonnegative");
    return deform_operator(base_operator(fam), kappa);
}

Real drift(const FamilyDescriptor& fam, Real kappa, Real y) {
    return fam.beta + kappa + 1 - y * (fam.alpha + fam.beta + 2 * kappa + 2);
}

Matrix psi0_second_from_ode(const FamilyDescriptor& fam, Real y) {
    // y(1-y) Psi'' = R Psi + (G - (1-2y)) Psi' with G = S + yR
    const Matrix P = fam.psi0(y);
    const Matrix G = fam.S + y * fam.R;
    const Matrix d1 = G * P / (y * (1 - y));
    return (fam.R * P + (G - (1 - 2 * y) * identity(fam.N)) * d1) / (y * (1 - y));
}

Matrix deform_F(const FamilyDescriptor& fam, Real kappa, Real y, SignConvention sign) {
    if (!(y > 0 && y < 1)) throw std::domain_error("deform_F needs y in (0,1)");
    const Matrix P = fam.psi0(y);
    const Matrix Pi = inverse(P);
    const Matrix d1 = fam.dpsi0(y);
    const Matrix I = identity(fam.N);
    if (sign == SignConvention::Minus) {
        const Matrix d2 = fam.d2psi0(y);
        const Matrix Vk = deform_operator(fam, kappa).V;
        return -Pi * Vk * P - y * (1 - y) * Pi * d2 - drift(fam, kappa, y) * Pi * d1;
    }
    return fam.F(y) + kappa * Pi * (fam.U + (kappa - 1) * I) * P - kappa * (1 - 2 * y) * Pi * d1;
}

Real tsym_residual(const FamilyDescriptor& fam, Real kappa, const Matrix& T, SignConvention sign) {
    Real worst = 0;
    for (Real y : sample_nodes()) {
        const Matrix F = deform_F(fam, kappa, y, sign);
        worst = std::max(worst, max_abs(T * F.adjoint() - F * T) / std::max<Real>(max_abs(F), 1e-300));
    }
    return worst;
}

TSolution solve_T(const FamilyDescriptor& fam, Real kappa, SignConvention sign) {
    const int n = fam.N;
    const std::vector<Real> ys = sample_nodes();
    std::vector<Matrix> Fs;
    Real fscale = 0;
    for (Real y : ys) {
        Fs.push_back(deform_F(fam, kappa, y, sign));
        fscale = std::max(fscale, max_abs(Fs.back()));
    }
    const Real tol = 1e-10;

    TSolution out;
    // Tridiagonal with a constant ratio F_{i+1,i}/F_{i,i+1} across nodes.
    bool tridiagonal = true;
    for (const auto& F : Fs)
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (std::abs(r - c) > 1 && std::abs(F(r, c)) > tol * fscale) tridiagonal = false;
    std::vector<Complex> ratio(std::max(n - 1, 0));
    if (tridiagonal) {
        for (int i = 0; i + 1 < n && tridiagonal; ++i) {
            // Use the node where the upper entry is largest.
            std::size_t best = 0;
            for (std::size_t k = 1; k < Fs.size(); ++k)
                if (std::abs(Fs[k](i, i + 1)) > std::abs(Fs[best](i, i + 1))) best = k;
            const Complex up = Fs[best](i, i + 1);
            if (std::abs(up) <= tol * fscale) {
                tridiagonal = false;
                break;
            }
            ratio[i] = Fs[best](i + 1, i) / up;
            for (const auto& F : Fs)
                if (std::abs(F(i + 1, i) - ratio[i] * F(i, i + 1)) > 1e-9 * fscale) tridiagonal = false;
        }
    }
    if (tridiagonal) {
        out.method = "tridiagonal";
        out.T = identity(n);
        for (int i = 0; i + 1 < n; ++i) out.T(i + 1, i + 1) = out.T(i, i) * ratio[i].real();
    } else {
        // T_i conj(F_ji) - F_ij T_j = 0 for all i, j and nodes; real and imaginary parts.
        out.method = "least_squares";
        const int rows = static_cast<int>(Fs.size()) * n * n * 2;
        RealMatrix A = RealMatrix::Zero(rows, n);
        int row = 0;
        for (const auto& F : Fs)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const Complex a = std::conj(F(j, i)), b = -F(i, j);
                    A(row, i) += a.real();
                    A(row, j) += b.real();
                    A(row + 1, i) += a.imag();
                    A(row + 1, j) += b.imag();
                    row += 2;
                }
        Eigen::JacobiSVD<RealMatrix> svd(A, Eigen::ComputeThinV);
        const RealVector sv = svd.singularValues();
        const Real smax = std::max<Real>(sv(0), 1e-300);
        out.nullity = 0;
        for (int k = 0; k < sv.size(); ++k)
            if (sv(k) <= 1e-10 * smax) ++out.nullity;
        RealVector t = svd.matrixV().col(n - 1);
        if (std::abs(t(0)) < 1e-300) throw DeformationError("T solution has vanishing first entry");
        t /= t(0);
        out.T = zeros(n);
        for (int i = 0; i < n; ++i) out.T(i, i) = t(i);
    }
    out.positive = true;
    for (int i = 0; i < n; ++i)
        if (!(out.T(i, i).real() > 0)) out.positive = false;
    out.tsym_residual = tsym_residual(fam, kappa, out.T, sign);
    return out;
}

Real conjugation_residual(const FamilyDescriptor& fam, Real kappa, SignConvention sign) {
    const HyperOp D = deform_operator(fam, kappa);
    const Matrix I = identity(fam.N);
    Real worst = 0;
    for (Real y : sample_nodes()) {
        const Matrix P = fam.psi0(y);
        const Matrix Pi = inverse(P);
        const Matrix d1 = fam.dpsi0(y), d2 = fam.d2psi0(y);
        const Matrix inv1 = -Pi * d1 * Pi;
        const Matrix inv2 = 2 * Pi * d1 * Pi * d1 * Pi - Pi * d2 * Pi;
        const Matrix CU = D.C - y * D.U;
        const Matrix F = deform_F(fam, kappa, y, sign);
        // f = c
        const Matrix m0 = y * (1 - y) * inv2 * P + inv1 * CU * P - Pi * D.V * P;
        // f = y c, after removing y times the first equation
        const Matrix m1 = 2 * y * (1 - y) * inv1 * P + Pi * CU * P;
        const Real scale = std::max<Real>(1, max_abs(F));
        worst = std::max(worst, max_abs(m0 - F) / scale);
        worst = std::max(worst, max_abs(m1 - drift(fam, kappa, y) * I) / scale);
    }
    return worst;
}

Real scalar_weight_ode_residual(const FamilyDescriptor& fam, Real kappa) {
    // (y(1-y) y^b (1-y)^a)' / (y^b (1-y)^a) = (b+1)(1-y) - (a+1) y
    const Real a = fam.alpha + kappa, b = fam.beta + kappa;
    const Real lhs0 = b + 1, lhs1 = -(a + 1) - (b + 1);
    const Real rhs0 = fam.beta + kappa + 1, rhs1 = -(fam.alpha + fam.beta + 2 * kappa + 2);
    return std::max(std::abs(lhs0 - rhs0), std::abs(lhs1 - rhs1));
}

Matrix DeformedFamily::wpol_value(Real y) const {
    const Matrix p = base.psi0(y);
    return p * T * p.adjoint();
}

Matrix DeformedFamily::wpol_derivative(Real y) const {
    const Matrix p = base.psi0(y), d = base.dpsi0(y);
    return d * T * p.adjoint() + p * T * d.adjoint();
}

MatFn DeformedFamily::wpol_fn() const {
    return [psi = base.psi0, T = T](Real y) {
        const Matrix p = psi(y);
        return Matrix(p * T * p.adjoint());
    };
}

DeformedFamily deformed_with(const FamilyDescriptor& fam, Real kappa, const Matrix& T, const HyperOp& D) {
    DeformedFamily df;
    df.base = fam;
    df.kappa = kappa;
    df.T = T;
    df.tsol.T = T;
    df.D = D;
    const FamilyDescriptor* base = &df.base;
    const FitResult fit = fit_function(
        [&](Real y) {
            const Matrix p = base->psi0(y);
            return Matrix(p * T * p.adjoint());
        },
        fam.wpol_degree);
    df.wpol = fit.poly;
    df.wpol_fit_residual = fit.residual;
    df.wpol_fit_scale = fit.scale;
    df.min_eigenvalue = std::numeric_limits<Real>::infinity();
    for (int k = 0; k < 100; ++k) {
        const Real y = (k + 0.5) / 100;
        const Eigen::SelfAdjointEigenSolver<Matrix> es(df.wpol_value(y), Eigen::EigenvaluesOnly);
        df.min_eigenvalue = std::min(df.min_eigenvalue, es.eigenvalues().minCoeff());
    }
    return df;
}

DeformedFamily deformed_weight(const FamilyDescriptor& fam, Real kappa, SignConvention sign) {
    const TSolution ts = solve_T(fam, kappa, sign);
    if (!ts.positive) {
        std::ostringstream os;
        os << "T is not positive for " << fam.name << " at kappa=" << kappa << ": diag =";
        for (int i = 0; i < fam.N; ++i) os << ' ' << ts.T(i, i).real();
        throw DeformationError(os.str());
    }
    DeformedFamily df = deformed_with(fam, kappa, ts.T, deform_operator(fam, kappa));
    df.sign = sign;
    df.tsol = ts;
    const Real rel = df.wpol_fit_residual / std::max<Real>(1, df.wpol_fit_scale);
    if (rel > 1e-9) {
        std::ostringstream os;
        os << "weight factor is not polynomial of degree " << fam.wpol_degree << " (relative residual " << rel << ")";
        throw DeformationError(os.str());
    }
    return df;
}

const DeformedFamily& DeformationChain::at(Real kappa) {
    auto it = cache_.find(kappa);
    if (it == cache_.end()) it = cache_.emplace(kappa, deformed_weight(fam_, kappa, sign_)).first;
    return it->second;
}

}  // namespace mvop
