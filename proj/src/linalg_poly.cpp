#include "mvop/linalg_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace mvop {

namespace {

void require_same_size(int a, int b) {
    if (a != b) throw std::invalid_argument("matrix polynomial size mismatch");
}

}  // namespace

MatPoly::MatPoly(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative matrix size");
}

MatPoly::MatPoly(std::vector<Matrix> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("MatPoly needs at least one coefficient to fix its size");
    n_ = static_cast<int>(coeffs_.front().rows());
    for (const auto& c : coeffs_)
        if (c.rows() != n_ || c.cols() != n_) throw std::invalid_argument("coefficients must be square and equal-sized");
    trim();
}

MatPoly MatPoly::constant(const Matrix& c) { return MatPoly(std::vector<Matrix>{c}); }

MatPoly MatPoly::identity(int n) { return constant(mvop::identity(n)); }

MatPoly MatPoly::monomial(const Matrix& c, int k) {
    std::vector<Matrix> cs(static_cast<std::size_t>(k) + 1, zeros(static_cast<int>(c.rows())));
    cs[k] = c;
    return MatPoly(std::move(cs));
}

void MatPoly::trim() {
    while (!coeffs_.empty() && (coeffs_.back().array() == Complex(0)).all()) coeffs_.pop_back();
}

Matrix MatPoly::coeff(int k) const {
    if (k < 0 || k > degree()) return zeros(n_);
    return coeffs_[k];
}

Matrix MatPoly::leading() const { return is_zero() ? zeros(n_) : coeffs_.back(); }

Matrix MatPoly::operator()(Real y) const {
    Matrix acc = zeros(n_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + *it;
    return acc;
}

MatPoly MatPoly::derivative() const {
    if (degree() < 1) return MatPoly(n_);
    std::vector<Matrix> out;
    out.reserve(coeffs_.size() - 1);
    for (int k = 1; k <= degree(); ++k) out.push_back(coeffs_[k] * Real(k));
    return MatPoly(std::move(out));
}

MatPoly MatPoly::adjoint() const {
    MatPoly r(n_);
    r.coeffs_.reserve(coeffs_.size());
    for (const auto& c : coeffs_) r.coeffs_.push_back(c.adjoint());
    return r;
}

MatPoly MatPoly::times_y() const {
    if (is_zero()) return *this;
    MatPoly r(n_);
    r.coeffs_.reserve(coeffs_.size() + 1);
    r.coeffs_.push_back(zeros(n_));
    r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
    return r;
}

Real MatPoly::max_abs() const {
    Real m = 0;
    for (const auto& c : coeffs_) m = std::max(m, mvop::max_abs(c));
    return m;
}

MatPoly& MatPoly::operator+=(const MatPoly& o) {
    require_same_size(n_, o.n_);
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), zeros(n_));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
}

MatPoly& MatPoly::operator-=(const MatPoly& o) {
    require_same_size(n_, o.n_);
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), zeros(n_));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
}

MatPoly operator+(MatPoly a, const MatPoly& b) { return a += b; }
MatPoly operator-(MatPoly a, const MatPoly& b) { return a -= b; }
MatPoly operator-(const MatPoly& a) { return Complex(-1) * a; }

MatPoly operator*(const MatPoly& a, const MatPoly& b) {
    require_same_size(a.size(), b.size());
    if (a.is_zero() || b.is_zero()) return MatPoly(a.size());
    std::vector<Matrix> out(static_cast<std::size_t>(a.degree() + b.degree() + 1), zeros(a.size()));
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j) out[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return MatPoly(std::move(out));
}

MatPoly operator*(const Matrix& c, const MatPoly& p) {
    require_same_size(static_cast<int>(c.rows()), p.size());
    if (p.is_zero()) return p;
    std::vector<Matrix> out;
    for (const auto& m : p.coeffs()) out.push_back(c * m);
    return MatPoly(std::move(out));
}

MatPoly operator*(const MatPoly& p, const Matrix& c) {
    require_same_size(static_cast<int>(c.rows()), p.size());
    if (p.is_zero()) return p;
    std::vector<Matrix> out;
    for (const auto& m : p.coeffs()) out.push_back(m * c);
    return MatPoly(std::move(out));
}

MatPoly operator*(Complex s, const MatPoly& p) {
    if (p.is_zero()) return p;
    std::vector<Matrix> out;
    for (const auto& m : p.coeffs()) out.push_back(s * m);
    return MatPoly(std::move(out));
}

Real coeff_distance(const MatPoly& a, const MatPoly& b) { return (a - b).max_abs(); }

MatPoly scalar_poly(const std::vector<Real>& c, int n) {
    if (c.empty()) return MatPoly(n);
    std::vector<Matrix> out;
    for (Real v : c) out.push_back(identity(n) * v);
    return MatPoly(std::move(out));
}

Matrix WeightedMatPoly::operator()(Real y) const {
    return std::pow(y, a) * std::pow(1 - y, b) * P(y);
}

WeightedMatPoly WeightedMatPoly::derivative() const {
    const int n = P.size();
    // (a(1-y) - b y) P + y(1-y) P'
    MatPoly lin = scalar_poly({a, -(a + b)}, n) * P;
    MatPoly quad = scalar_poly({0, 1, -1}, n) * P.derivative();
    return {a - 1, b - 1, lin + quad};
}

WeightedMatPoly WeightedMatPoly::simplified(Real tol) const {
    WeightedMatPoly w = *this;
    const Real scale = std::max<Real>(1, w.P.max_abs());
    while (w.P.degree() >= 1 && max_abs(w.P.coeff(0)) <= tol * scale) {
        std::vector<Matrix> cs(w.P.coeffs().begin() + 1, w.P.coeffs().end());
        w.P = MatPoly(std::move(cs));
        w.a += 1;
    }
    while (w.P.degree() >= 1 && max_abs(w.P(1)) <= tol * scale) {
        // P = (1-y) Q with q_k = sum_{j<=k} p_j
        const int d = w.P.degree();
        std::vector<Matrix> q;
        Matrix run = zeros(w.P.size());
        for (int k = 0; k < d; ++k) {
            run += w.P.coeffs()[k];
            q.push_back(run);
        }
        w.P = MatPoly(std::move(q));
        w.b += 1;
    }
    return w;
}

std::vector<Real> chebyshev_nodes(int count, Real lo, Real hi) {
    std::vector<Real> ys;
    const Real mid = (lo + hi) / 2, half = (hi - lo) / 2;
    for (int k = 0; k < count; ++k)
        ys.push_back(mid - half * std::cos(std::numbers::pi_v<Real> * (k + Real(0.5)) / count));
    return ys;
}

std::vector<Real> holdout_nodes(Real lo, Real hi) {
    // Angles j*pi/11 never coincide with the odd multiples of pi/(2n) used above.
    std::vector<Real> ys;
    const Real mid = (lo + hi) / 2, half = (hi - lo) / 2;
    for (int j = 1; j <= 10; ++j) ys.push_back(mid - half * std::cos(std::numbers::pi_v<Real> * j / 11));
    return ys;
}

FitResult fit_matpoly(const std::vector<Sample>& samples, int degree, const std::vector<Sample>& holdout) {
    if (degree < 0) throw std::invalid_argument("negative fit degree");
    if (static_cast<int>(samples.size()) < degree + 1)
        throw std::invalid_argument("fit_matpoly needs at least degree+1 samples");
    std::set<Real> seen;
    for (const auto& s : samples)
        if (!seen.insert(s.y).second) throw std::invalid_argument("duplicate fit node");
    const int n = static_cast<int>(samples.front().value.rows());

    Real lo = samples.front().y, hi = lo;
    for (const auto& s : samples) {
        lo = std::min(lo, s.y);
        hi = std::max(hi, s.y);
    }
    const Real c = (lo + hi) / 2;
    const Real h = hi > lo ? (hi - lo) / 2 : Real(1);

    // Least squares (exact interpolation when the counts match) in t = (y - c)/h.
    const int m = static_cast<int>(samples.size());
    RealMatrix V(m, degree + 1);
    for (int i = 0; i < m; ++i) {
        const Real t = (samples[i].y - c) / h;
        Real p = 1;
        for (int k = 0; k <= degree; ++k, p *= t) V(i, k) = p;
    }
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> rhs(m, n * n);
    Real scale = 0;
    for (int i = 0; i < m; ++i) {
        scale = std::max(scale, max_abs(samples[i].value));
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) rhs(i, r * n + s) = samples[i].value(r, s);
    }
    const auto qr = V.cast<Complex>().colPivHouseholderQr();
    const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> tc = qr.solve(rhs);

    // Expand sum_k a_k ((y-c)/h)^k into the monomial basis in y.
    std::vector<Matrix> coeffs(static_cast<std::size_t>(degree) + 1, zeros(n));
    for (int k = 0; k <= degree; ++k) {
        Matrix a(n, n);
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) a(r, s) = tc(k, r * n + s);
        a /= std::pow(h, k);
        // (y - c)^k = sum_j binom(k,j) y^j (-c)^{k-j}
        Real binom = 1;
        for (int j = 0; j <= k; ++j) {
            coeffs[j] += a * (binom * std::pow(-c, k - j));
            binom = binom * (k - j) / (j + 1);
        }
    }
    FitResult out{MatPoly(std::move(coeffs)), 0, scale};
    for (const auto& s : holdout) {
        out.residual = std::max(out.residual, max_abs(out.poly(s.y) - s.value));
        out.scale = std::max(out.scale, max_abs(s.value));
    }
    return out;
}

FitResult fit_function(const MatFn& f, int degree) {
    std::vector<Sample> samples, hold;
    for (Real y : chebyshev_nodes(degree + 1)) samples.push_back({y, f(y)});
    for (Real y : holdout_nodes()) hold.push_back({y, f(y)});
    return fit_matpoly(samples, degree, hold);
}

}  // namespace mvop
