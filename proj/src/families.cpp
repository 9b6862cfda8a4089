#include "mvop/families.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mvop {

namespace {

// Sum of c_k y^{p_k}, differentiable in closed form.
struct PowerSum {
    std::vector<std::pair<Real, Real>> terms;  // (coefficient, power)

    Real eval(Real y, int deriv) const {
        Real s = 0;
        for (auto [c, p] : terms) {
            Real f = c, q = p;
            for (int k = 0; k < deriv; ++k) f *= q--;
            if (f != 0) s += f * std::pow(y, q);
        }
        return s;
    }
};

using PowerMatrix = std::vector<std::vector<PowerSum>>;

MatFn power_matrix_fn(PowerMatrix pm, int deriv) {
    return [pm = std::move(pm), deriv](Real y) {
        const int n = static_cast<int>(pm.size());
        Matrix out(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) out(r, c) = pm[r][c].eval(y, deriv);
        return out;
    };
}

Matrix real_matrix(std::initializer_list<std::initializer_list<Real>> rows) {
    const int n = static_cast<int>(rows.size());
    Matrix m(n, n);
    int r = 0;
    for (const auto& row : rows) {
        int c = 0;
        for (Real v : row) m(r, c++) = v;
        ++r;
    }
    return m;
}

void require_interior(Real y) {
    if (!(y > 0 && y < 1)) throw std::domain_error("evaluation point must lie in (0,1)");
}

// y^a (1-y)^b and its first two derivatives.
Real scalar_factor(Real a, Real b, Real y, int deriv) {
    const Real u = 1 - y;
    switch (deriv) {
        case 0: return std::pow(y, a) * std::pow(u, b);
        case 1: return std::pow(y, a - 1) * std::pow(u, b - 1) * (a * u - b * y);
        default:
            return std::pow(y, a - 2) * std::pow(u, b - 2) *
                   (a * (a - 1) * u * u - 2 * a * b * y * u + b * (b - 1) * y * y);
    }
}

Matrix psi0_su2_deriv(int twoEll, Real y, int deriv) {
    require_interior(y);
    static thread_local int cached = -1;
    static thread_local Matrix K;
    if (cached != twoEll) {
        K = to_matrix(build_kernel(twoEll).K);
        cached = twoEll;
    }
    const int n = twoEll + 1;
    Matrix ups = zeros(n);
    for (int j = 0; j < n; ++j) {
        const Complex phase = std::polar(Real(1), 3 * std::numbers::pi_v<Real> * j / 2);
        const Real bin = static_cast<Real>(binomial(twoEll, j));
        ups(j, j) = phase * bin * scalar_factor(Real(j) / 2, Real(twoEll - j) / 2, y, deriv);
    }
    return K * ups * K;
}

Matrix su2_F(int twoEll, Real y) {
    const Real l = Real(twoEll) / 2;
    const int n = twoEll + 1;
    const Real yy = y * (1 - y);
    Matrix F = zeros(n);
    for (int i = 0; i < n; ++i)
        F(i, i) = (2 * yy * (l * (l + 2) - i * i + 2 * l * i) - l * (2 * i + 1) + i * i) / (2 * yy);
    for (int i = 1; i < n; ++i) F(i, i - 1) = i * (twoEll - i + 1) * (1 - 2 * y) / (4 * yy);
    for (int i = 0; i + 1 < n; ++i) F(i, i + 1) = (i + 1) * (twoEll - i) * (1 - 2 * y) / (4 * yy);
    return F;
}

void attach_sr(FamilyDescriptor& f) {
    const SRFit fit = infer_SR(f.psi0, f.dpsi0);
    f.S = fit.S;
    f.R = fit.R;
    f.sr_residual = fit.residual;
}

Rational pochhammer(const Rational& a, int n) {
    Rational r = 1;
    for (int k = 0; k < n; ++k) r *= a + k;
    return r;
}

}  // namespace

Real FamilyDescriptor::param(const std::string& key) const {
    for (const auto& [k, v] : params)
        if (k == key) return v;
    throw std::out_of_range("family has no parameter " + key);
}

std::string FamilyDescriptor::label() const {
    auto fmt = [](Real v) {
        std::ostringstream os;
        const Real twice = 2 * v;
        if (v == std::floor(v)) os << static_cast<long long>(v);
        else if (twice == std::floor(twice)) os << static_cast<long long>(twice) << "/2";
        else os << static_cast<double>(v);
        return os.str();
    };
    std::string out = name + "(";
    for (std::size_t k = 0; k < params.size(); ++k) {
        if (k) out += ",";
        out += params[k].first + "=" + fmt(params[k].second);
    }
    return out + ")";
}

SRFit infer_SR(const MatFn& psi0, const MatFn& dpsi0) {
    const MatFn g = [&](Real y) {
        const Matrix p = psi0(y);
        Eigen::FullPivLU<Matrix> lu(p);
        if (!lu.isInvertible()) throw std::runtime_error("Psi0 is singular at a fit node");
        return Matrix(y * (1 - y) * dpsi0(y) * lu.inverse());
    };
    const FitResult fit = fit_function(g, 1);
    return {fit.poly.coeff(0), fit.poly.coeff(1), fit.residual};
}

Matrix wpol_value(const FamilyDescriptor& fam, const Matrix& T, Real y) {
    const Matrix p = fam.psi0(y);
    return p * T * p.adjoint();
}

EvalPoint EvalPoint::from_y(Real y) {
    require_interior(y);
    return {y, std::acos(1 - 2 * y)};
}

EvalPoint EvalPoint::from_t(Real t) {
    if (!(t > 0 && t < std::numbers::pi_v<Real>)) throw std::domain_error("angle must lie in (0, pi)");
    return {(1 - std::cos(t)) / 2, t};
}

Matrix psi0_su2_krawtchouk(int twoEll, Real y) { return psi0_su2_deriv(twoEll, y, 0); }
Matrix dpsi0_su2_krawtchouk(int twoEll, Real y) { return psi0_su2_deriv(twoEll, y, 1); }
Matrix d2psi0_su2_krawtchouk(int twoEll, Real y) { return psi0_su2_deriv(twoEll, y, 2); }

Matrix phi0_su2_direct(int twoEll, Real t) {
    const int n = twoEll + 1;
    const Real l = Real(twoEll) / 2;
    Matrix P = zeros(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            Complex s = 0;
            for (int a = 0; a <= r; ++a)
                for (int b = 0; b <= twoEll - r; ++b) {
                    const Real j1 = a - Real(r) / 2, j2 = b - Real(twoEll - r) / 2;
                    if (std::abs(-l + c - (j1 + j2)) > 1e-9) continue;
                    const Real w = static_cast<Real>(binomial(r, a)) * static_cast<Real>(binomial(twoEll - r, b)) /
                                   static_cast<Real>(binomial(twoEll, twoEll - c));
                    s += w * std::polar(Real(1), (j2 - j1) * t);
                }
            P(r, c) = s;
        }
    return P;
}

std::pair<Matrix, Matrix> su2_sr_closed_form(int twoEll) {
    const Real l = Real(twoEll) / 2;
    const Matrix S = to_matrix(s_matrix(twoEll));
    const int n = twoEll + 1;
    return {Matrix((l * identity(n) - S) / 2), Matrix(-l * identity(n))};
}

Matrix su2_lambda_closed_form(int twoEll, int d) {
    const int n = twoEll + 1;
    Matrix L = zeros(n);
    for (int i = 0; i < n; ++i) L(i, i) = Real(-d * (twoEll + 2 + d) + i * (twoEll - i));
    return L;
}

std::vector<Rational> su2_T_closed_form(int twoEll, const Rational& nu) {
    std::vector<Rational> t;
    for (int i = 0; i <= twoEll; ++i)
        t.push_back(Rational(binomial(twoEll, i)) * pochhammer(nu, i) / pochhammer(nu + twoEll - i, i));
    return t;
}

std::vector<Rational> su2_T_from_F_ratios(int twoEll, const Rational& nu) {
    // Off-diagonals of the deformed F share the factor (1-2y)/(4y(1-y)). Their remaining
    // constants come from F itself plus 2(nu-1) times the transposed S entry.
    const RatMatrix S = s_matrix(twoEll);
    std::vector<Rational> t{Rational(1)};
    for (int i = 0; i < twoEll; ++i) {
        const Rational lower = Rational((i + 1) * (twoEll - i)) + 2 * (nu - 1) * S[i][i + 1];
        const Rational upper = Rational((i + 1) * (twoEll - i)) + 2 * (nu - 1) * S[i + 1][i];
        t.push_back(t.back() * lower / upper);
    }
    return t;
}

FamilyDescriptor family_su2(int twoEll) {
    if (twoEll < 0) throw std::invalid_argument("su2 needs ell >= 0");
    const int n = twoEll + 1;
    const Real l = Real(twoEll) / 2;
    FamilyDescriptor f;
    f.name = "su2";
    f.params = {{"ell", l}};
    f.N = n;
    f.alpha = 0.5;
    f.beta = 0.5;
    f.psi0 = [twoEll](Real y) { return psi0_su2_krawtchouk(twoEll, y); };
    f.dpsi0 = [twoEll](Real y) { return dpsi0_su2_krawtchouk(twoEll, y); };
    f.d2psi0 = [twoEll](Real y) { return d2psi0_su2_krawtchouk(twoEll, y); };
    f.T = identity(n);
    attach_sr(f);

    const Matrix Sk = to_matrix(s_matrix(twoEll));
    f.C = (2 * l + 3) / 2 * identity(n) - Sk;
    f.U = (2 * l + 3) * identity(n);
    f.V = zeros(n);
    for (int i = 0; i < n; ++i) f.V(i, i) = -Real(i * (twoEll - i));
    f.F = [twoEll](Real y) { return su2_F(twoEll, y); };

    if (twoEll > 0) {
        FirstOrderOp e{zeros(n), zeros(n), zeros(n)};
        for (int i = 0; i < n; ++i) {
            e.A0(i, i) = (2 * l + 2) * (i - twoEll) / twoEll;
            e.B1(i, i) = -(l - i) / l;
            e.B0(i, i) = (l - i) / (2 * l);
            if (i + 1 < n) e.B0(i, i + 1) = -Real(twoEll - i) / (4 * l);
            if (i >= 1) e.B0(i, i - 1) = Real(i) / (4 * l);
        }
        f.E = e;
    }
    f.wpol_degree = twoEll;
    return f;
}

Matrix a1_F(int n, int m, int i, Real y) {
    const Real sq = std::sqrt(y);
    Matrix F(2, 2);
    F(0, 0) = Real((1 + m) * (1 + m + 2 * n)) / 4 + (i - n) / (1 - y) - Real((1 + m) * (1 + m)) / (4 * y);
    F(0, 1) = i * sq / (1 - y);
    F(1, 0) = (n - i) * sq / (1 - y);
    F(1, 1) = m * (y * (m + 2 * n) - m) / (4 * y) - i * y / (1 - y);
    return F;
}

FamilyDescriptor family_a1(int n, int m, int i) {
    if (n < 2 || m < 1 || i < 1 || i > n - 1)
        throw std::invalid_argument("a1 needs n >= 2, m >= 1 and 1 <= i <= n-1");
    FamilyDescriptor f;
    f.name = "a1";
    f.params = {{"n", Real(n)}, {"m", Real(m)}, {"i", Real(i)}};
    f.N = 2;
    f.alpha = n - 1;
    f.beta = 0;

    const Real h = Real(m) / 2;
    const Real c0 = Real(m + 1) / (i - n), c1 = -Real(m + n - i + 1) / (i - n);
    const PowerMatrix pm{{PowerSum{{{1, h + 0.5}}}, PowerSum{{{1, h}}}},
                         {PowerSum{{{1, h + 0.5}}}, PowerSum{{{c0, h}, {c1, h + 1}}}}};
    f.psi0 = power_matrix_fn(pm, 0);
    f.dpsi0 = power_matrix_fn(pm, 1);
    f.d2psi0 = power_matrix_fn(pm, 2);
    f.T = real_matrix({{1, 0}, {0, Real(n - i) / i}});
    attach_sr(f);

    const Real q = -n - m - 1 + i;
    f.C = real_matrix({{(m + 1) * (-m - n - 2 + i) / q, (-n + i) / q},
                       {-(m + 1) / q, (-m * m + 2 * i - 2 * n + m * i - 2 * m - m * n - 1) / q}});
    f.U = real_matrix({{Real(n + m + 2), 0}, {-1, Real(n + m + 3)}});
    f.V = real_matrix({{0, 0}, {0, Real(n + m + 1 - i)}});
    f.F = [n, m, i](Real y) { return a1_F(n, m, i, y); };
    f.wpol_degree = m + 2;
    return f;
}

Matrix c1_F(int n, Real y) {
    const Real sq = std::sqrt(y);
    Matrix F(2, 2);
    F(0, 0) = (4 * y * y * n + 4 * y * n - y * y - 18 * y + 3) / (4 * y * (y - 1));
    F(0, 1) = -2 * sq / (y - 1);
    F(1, 0) = -2 * sq * (n - 2) / (y - 1);
    F(1, 1) = 2 * y / (y - 1);
    return F;
}

FamilyDescriptor family_c1(int n) {
    if (n < 3) throw std::invalid_argument("c1 needs n >= 3");
    FamilyDescriptor f;
    f.name = "c1";
    f.params = {{"n", Real(n)}};
    f.N = 2;
    f.alpha = 2 * n - 3;
    f.beta = 1;
    const Real nn = n;
    const PowerMatrix pm{{PowerSum{{{1, 0.5}}}, PowerSum{{{1, 0}}}},
                         {PowerSum{{{1, 0.5}}}, PowerSum{{{-1 / (nn - 2), 0}, {(nn - 1) / (nn - 2), 1}}}}};
    f.psi0 = power_matrix_fn(pm, 0);
    f.dpsi0 = power_matrix_fn(pm, 1);
    f.d2psi0 = power_matrix_fn(pm, 2);
    f.T = real_matrix({{1, 0}, {0, nn - 2}});
    attach_sr(f);
    f.C = real_matrix({{(2 * nn - 1) / (nn - 1), (nn - 2) / (nn - 1)}, {1 / (nn - 1), (3 * nn - 4) / (nn - 1)}});
    f.U = real_matrix({{2 * nn + 1, 0}, {-1, 2 * nn + 2}});
    f.V = real_matrix({{0, 0}, {0, 2 * nn - 2}});
    f.F = [n](Real y) { return c1_F(n, y); };
    f.wpol_degree = 2;
    return f;
}

MatPoly c1_gamma2_display(int n, Real kappa) {
    const Real k = kappa, nn = n, den = (3 + k) * (nn - 1);
    const Matrix y1 = real_matrix({{(k * nn - 1 + 2 * nn - k) / den, 1 / den},
                                   {(nn - 2) / den, (k * nn + 3 * nn - 4 - k) / den}});
    const Matrix y2 = real_matrix({{-1, -1 / (3 + k)}, {0, -(2 + k) / (3 + k)}});
    return MatPoly(std::vector<Matrix>{zeros(2), y1, y2});
}

MatPoly c1_gamma1_display(int n, Real kappa) {
    const Real k = kappa, nn = n, den = (3 + k) * (nn - 1);
    const Matrix c0 = real_matrix(
        {{(-3 - k * k + 6 * nn - 2 * k + 4 * k * nn + k * k * nn) / den, (3 + 2 * k) / den},
         {(nn - 2) * (2 * nn + 1 + 2 * k) / den, (k * k * nn + 7 * nn + 6 * k * nn - 8 * k - 10 - k * k) / den}});
    const Matrix c1 = real_matrix({{-2 * nn - 1 - 2 * k, -(1 + k) / (3 + k)},
                                   {0, -2 * (2 + k) * (k + nn + 1) / (3 + k)}});
    return MatPoly(std::vector<Matrix>{c0, c1});
}

Matrix c1_weight_display(int n, Real kappa, Real y) {
    const Real k = kappa, nn = n;
    const Real off = 2 * (2 * y * nn - 2 + y * k) / (2 + k);
    return real_matrix({{2 * (2 * y + y * k + 2 * nn - 4) / (2 + k), off},
                        {off, 2 * (2 * y * y * nn * nn - 4 * y * y * nn - 2 * y * nn + k * y * nn + 2 * y * y - 2 * y * k + 2) /
                                  ((2 + k) * (nn - 2))}});
}

Matrix su2_gamma2_closed_form(int twoEll, Real nu, Real y, Real cross_sign) {
    const int n = twoEll + 1;
    const Real l = Real(twoEll) / 2, l2 = l * l, x = 1 - 2 * y;
    Matrix G = zeros(n);
    for (int i = 0; i < n; ++i) {
        G(i, i) = x * x * (l - i) * (l - i) / l2 + cross_sign * 4 * y * (1 - y) * (l + nu) * (l + nu) / l2 +
                  (-i * (twoEll - i + 1) - (twoEll - i) * (i + 1)) / (4 * l2);
        if (i >= 1) G(i, i - 1) = x * (i - 1 - twoEll) * (twoEll - 2 * i + 1) / (2 * l2);
        if (i + 1 < n) G(i, i + 1) = x * (i + 1) * (twoEll - 2 * i - 1) / (2 * l2);
        if (i >= 2) G(i, i - 2) = Real((twoEll - i + 2) * (twoEll - i + 1)) / (4 * l2);
        if (i + 2 < n) G(i, i + 2) = Real((i + 2) * (i + 1)) / (4 * l2);
    }
    return G;
}

FamilyDescriptor family_scalar_jacobi(Real alpha, Real beta) {
    if (!(alpha > -1) || !(beta > -1)) throw std::invalid_argument("jacobi needs alpha, beta > -1");
    FamilyDescriptor f;
    f.name = "jacobi";
    f.params = {{"alpha", alpha}, {"beta", beta}};
    f.N = 1;
    f.alpha = alpha;
    f.beta = beta;
    f.psi0 = [](Real) { return identity(1); };
    f.dpsi0 = [](Real) { return zeros(1); };
    f.d2psi0 = [](Real) { return zeros(1); };
    f.T = identity(1);
    attach_sr(f);
    f.C = (beta + 1) * identity(1);
    f.U = (alpha + beta + 2) * identity(1);
    f.V = zeros(1);
    f.F = [](Real) { return zeros(1); };
    f.wpol_degree = 0;
    return f;
}

}  // namespace mvop
