#include "mvop/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace mvop {

namespace {

Matrix inverse(const Matrix& m) {
    Eigen::FullPivLU<Matrix> lu(m);
    if (!lu.isInvertible()) throw std::runtime_error("singular matrix in engine");
    return lu.inverse();
}

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2; }

Real relative(Real diff, Real scale) { return diff / std::max<Real>(1, scale); }

MatPoly y_one_minus_y(int n) { return scalar_poly({0, 1, -1}, n); }

}  // namespace

WeightedRule engine_rule(const DeformedFamily& df, int dmax, int order_override) {
    const int order = order_override > 0 ? order_override : default_order(dmax, df.base.wpol_degree);
    return WeightedRule(gauss_jacobi_rule(df.alpha_k(), df.beta_k(), order), df.wpol_fn());
}

Real cross_gram_residual(const std::vector<MatPoly>& polys, const WeightedRule& wr) {
    std::vector<Real> norm;
    for (const auto& q : polys) norm.push_back(max_abs(matrix_inner_product(q, q, wr)));
    Real worst = 0;
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t j = 0; j < polys.size(); ++j) {
            if (i == j) continue;
            const Real denom = std::sqrt(norm[i] * norm[j]);
            if (denom == 0) continue;
            worst = std::max(worst, max_abs(matrix_inner_product(polys[i], polys[j], wr)) / denom);
        }
    return worst;
}

MonicSequence monic_mvops(const DeformedFamily& df, int dmax, int order_override) {
    if (dmax < 0) throw std::invalid_argument("dmax must be nonnegative");
    MonicSequence seq;
    seq.rule = engine_rule(df, dmax, order_override);
    const int n = df.base.N;
    std::vector<Matrix> inv_norms;
    auto push = [&](MatPoly q) {
        const Matrix h = hermitian_part(matrix_inner_product(q, q, seq.rule));
        seq.polys.push_back(std::move(q));
        seq.norms.push_back(h);
        inv_norms.push_back(inverse(h));
    };
    push(MatPoly::identity(n));
    for (int d = 1; d <= dmax; ++d) {
        // Start from y Q_{d-1}; same monic result as y^d I, better conditioned.
        MatPoly v = seq.polys.back().times_y();
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < d; ++j) {
                const Matrix c = matrix_inner_product(v, seq.polys[j], seq.rule) * inv_norms[j];
                v -= c * seq.polys[j];
            }
        push(std::move(v));
    }
    seq.cross_residual = cross_gram_residual(seq.polys, seq.rule);
    return seq;
}

MonicSequence monic_by_recurrence(const DeformedFamily& df, int dmax, int order_override) {
    MonicSequence seq;
    seq.rule = engine_rule(df, dmax, order_override);
    const int n = df.base.N;
    seq.polys.push_back(MatPoly::identity(n));
    seq.norms.push_back(hermitian_part(matrix_inner_product(seq.polys[0], seq.polys[0], seq.rule)));
    for (int d = 0; d < dmax; ++d) {
        const MatPoly yq = seq.polys[d].times_y();
        const Matrix B = matrix_inner_product(yq, seq.polys[d], seq.rule) * inverse(seq.norms[d]);
        MatPoly next = yq - B * seq.polys[d];
        if (d > 0) {
            const Matrix C = matrix_inner_product(yq, seq.polys[d - 1], seq.rule) * inverse(seq.norms[d - 1]);
            next -= C * seq.polys[d - 1];
        }
        seq.norms.push_back(hermitian_part(matrix_inner_product(next, next, seq.rule)));
        seq.polys.push_back(std::move(next));
    }
    seq.cross_residual = cross_gram_residual(seq.polys, seq.rule);
    return seq;
}

RecurrenceData three_term(const MonicSequence& seq) {
    if (seq.polys.size() < 3) throw std::invalid_argument("three_term needs at least three polynomials");
    RecurrenceData r;
    const int n = seq.polys[0].size();
    for (std::size_t d = 0; d + 1 < seq.polys.size(); ++d) {
        const MatPoly yq = seq.polys[d].times_y();
        const Matrix B = matrix_inner_product(yq, seq.polys[d], seq.rule) * inverse(seq.norms[d]);
        const Matrix C = d == 0 ? zeros(n)
                                : Matrix(matrix_inner_product(yq, seq.polys[d - 1], seq.rule) * inverse(seq.norms[d - 1]));
        MatPoly rest = yq - seq.polys[d + 1] - B * seq.polys[d];
        if (d > 0) rest -= C * seq.polys[d - 1];
        r.residual = std::max(r.residual, relative(rest.max_abs(), yq.max_abs()));
        r.B.push_back(B);
        r.C.push_back(C);
    }
    return r;
}

MatPoly apply_hyper(const MatPoly& P, const HyperOp& op) {
    const int n = P.size();
    if (op.C.rows() != n) throw std::invalid_argument("operator size mismatch");
    const MatPoly d1 = P.derivative(), d2 = d1.derivative();
    return y_one_minus_y(n) * d2 + d1 * op.C - (d1 * op.U).times_y() - P * op.V;
}

MatPoly apply_first(const MatPoly& P, const FirstOrderOp& op) {
    if (op.B1.rows() != P.size()) throw std::invalid_argument("operator size mismatch");
    const MatPoly d1 = P.derivative();
    return (d1 * op.B1).times_y() + d1 * op.B0 + P * op.A0;
}

EigenData eigen_check(const MonicSequence& seq, const HyperOp& op) {
    EigenData e;
    for (std::size_t d = 0; d < seq.polys.size(); ++d) {
        const MatPoly& q = seq.polys[d];
        const MatPoly qd = apply_hyper(q, op);
        const Matrix lambda = qd.coeff(static_cast<int>(d));
        const Real res = relative(coeff_distance(qd, lambda * q), qd.max_abs());
        e.lambdas.push_back(lambda);
        e.residuals.push_back(res);
        e.max_residual = std::max(e.max_residual, res);
    }
    return e;
}

Real symmetry_check(const MonicSequence& seq, const RightOp& op) {
    std::vector<MatPoly> images;
    std::vector<Real> qn, an;
    for (const auto& q : seq.polys) {
        images.push_back(op(q));
        qn.push_back(max_abs(matrix_inner_product(q, q, seq.rule)));
        an.push_back(max_abs(matrix_inner_product(images.back(), images.back(), seq.rule)));
    }
    Real worst = 0;
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = 0; j < images.size(); ++j) {
            const Matrix lhs = matrix_inner_product(images[i], seq.polys[j], seq.rule);
            const Matrix rhs = matrix_inner_product(seq.polys[i], images[j], seq.rule);
            const Real bound = std::sqrt(an[i] * qn[j]) + std::sqrt(qn[i] * an[j]);
            if (bound == 0) continue;
            worst = std::max(worst, max_abs(lhs - rhs) / bound);
        }
    return worst;
}

GammaPair gamma_pair(const DeformedFamily& df, const DeformedFamily& next) {
    if (std::abs(next.kappa - df.kappa - 1) > 1e-12) throw std::invalid_argument("gamma_pair needs consecutive kappa");
    const FamilyDescriptor& fam = df.base;
    const Matrix tratio = inverse(df.T) * next.T;
    const MatFn g2 = [&](Real y) {
        const Matrix ps = fam.psi0(y).adjoint();
        return Matrix(y * (1 - y) * inverse(ps) * tratio * ps);
    };
    const Real a = df.beta_k() + 1, b = df.alpha_k() + 1;
    const MatFn g1 = [&](Real y) {
        const Matrix dw = (a * (1 - y) - b * y) * next.wpol_value(y) + y * (1 - y) * next.wpol_derivative(y);
        return Matrix(inverse(df.wpol_value(y)) * dw);
    };
    const FitResult f2 = fit_function(g2, 2), f1 = fit_function(g1, 1);
    GammaPair gp{f2.poly, f1.poly, f2.residual, f1.residual, f2.scale, f1.scale, 0, 0};

    Real wscale = 0, wdiff = 0;
    for (Real y : holdout_nodes()) {
        const Matrix lhs = y * (1 - y) * next.wpol_value(y);
        wscale = std::max(wscale, max_abs(lhs));
        wdiff = std::max(wdiff, max_abs(lhs - df.wpol_value(y) * gp.gamma2(y)));
    }
    gp.weight_residual = relative(wdiff, wscale);

    const WeightedMatPoly wg{df.beta_k(), df.alpha_k(), df.wpol * gp.gamma2};
    const MatPoly lhs = wg.derivative().P;
    const MatPoly rhs = y_one_minus_y(fam.N) * df.wpol * gp.gamma1;
    gp.derivative_residual = relative(coeff_distance(lhs, rhs), lhs.max_abs());
    return gp;
}

MatPoly apply_gamma(const MatPoly& P, const GammaPair& gp) {
    return P.derivative().derivative() * gp.gamma2.adjoint() + P.derivative() * gp.gamma1.adjoint();
}

Real shift_check(const MonicSequence& seq, const MonicSequence& next) {
    Real worst = 0;
    const std::size_t top = std::min(seq.polys.size(), next.polys.size() + 1);
    for (std::size_t d = 1; d < top; ++d) {
        const MatPoly dq = seq.polys[d].derivative();
        worst = std::max(worst, relative(coeff_distance(dq, Complex(Real(d)) * next.polys[d - 1]), dq.max_abs()));
    }
    return worst;
}

RodriguesResult rodrigues(DeformationChain& chain, Real kappa, int d) {
    if (d < 0) throw std::invalid_argument("negative Rodrigues degree");
    WeightedMatPoly w = chain.at(kappa + d).weight();
    for (int k = 0; k < d; ++k) w = w.derivative();
    const DeformedFamily& base = chain.at(kappa);
    // Both factors now carry y^{beta+kappa}(1-y)^{alpha+kappa}; divide the polynomial parts.
    const MatFn quotient = [&](Real y) { return Matrix(w.P(y) * inverse(base.wpol_value(y))); };
    const FitResult fit = fit_function(quotient, d);
    RodriguesResult r;
    r.G = inverse(fit.poly.coeff(d));
    r.Q = r.G * fit.poly;
    r.fit_residual = fit.residual / std::max<Real>(fit.scale, std::numeric_limits<Real>::min());
    return r;
}

RaisingReport raising_check(DeformationChain& chain, Real kappa, int dmax, std::uint64_t seed) {
    const DeformedFamily& df = chain.at(kappa);
    const DeformedFamily& nx = chain.at(kappa + 1);
    const int n = df.base.N;
    const MonicSequence sk = monic_mvops(df, dmax + 1);
    const MonicSequence sk1 = monic_mvops(nx, dmax);
    const GammaPair gp = gamma_pair(df, nx);
    const MatPoly g2s = gp.gamma2.adjoint(), g1s = gp.gamma1.adjoint();
    RaisingReport rep;

    std::mt19937_64 rng(seed);
    std::normal_distribution<Real> normal;
    std::uniform_int_distribution<int> deg(1, std::max(1, dmax));
    auto random_poly = [&](int degree) {
        std::vector<Matrix> cs;
        for (int k = 0; k <= degree; ++k) {
            Matrix c(n, n);
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) c(r, s) = Complex(normal(rng), normal(rng));
            cs.push_back(c);
        }
        return MatPoly(std::move(cs));
    };
    for (int trial = 0; trial < 10; ++trial) {
        const MatPoly P = random_poly(deg(rng)), Q = random_poly(deg(rng) - 1);
        const Matrix lhs = matrix_inner_product(P.derivative(), Q, sk1.rule);
        const MatPoly xi = Q.derivative() * g2s + Q * g1s;
        const Matrix rhs = -matrix_inner_product(P, xi, sk.rule);
        rep.adjoint = std::max(rep.adjoint, max_abs(lhs - rhs) / std::max(max_abs(lhs), max_abs(rhs)));
    }

    std::vector<Matrix> Gk, Gk1;
    for (int d = 0; d <= dmax; ++d) {
        Gk.push_back(rodrigues(chain, kappa, d).G);
        Gk1.push_back(rodrigues(chain, kappa + 1, d).G);
    }
    for (int m = 0; m < dmax; ++m) {
        const MatPoly rhs = sk1.polys[m].derivative() * g2s + sk1.polys[m] * g1s;
        const Matrix ginv = inverse(Gk[m + 1]);
        const MatPoly lhs = Gk1[m] * ginv * sk.polys[m + 1];
        const MatPoly lhs_printed = Gk[m] * ginv * sk.polys[m + 1];
        rep.monic_relation = std::max(rep.monic_relation, relative(coeff_distance(lhs, rhs), rhs.max_abs()));
        rep.monic_relation_printed =
            std::max(rep.monic_relation_printed, relative(coeff_distance(lhs_printed, rhs), rhs.max_abs()));
    }
    const MatPoly g1m = Gk[0] * inverse(Gk[1]) * sk.polys[1];
    rep.gamma1_from_monic = relative(coeff_distance(g1s, g1m), g1s.max_abs());

    if (dmax >= 2) {
        const GammaPair gp1 = gamma_pair(nx, chain.at(kappa + 2));
        const MatPoly g1next = gp1.gamma1.adjoint();
        const MatPoly derived = Gk1[1] * inverse(Gk[2]) * sk.polys[2] - Gk1[1] * g1next * g1s;
        const MatPoly printed = Gk[1] * inverse(Gk[2]) * sk.polys[2] - Gk1[0] * inverse(Gk1[1]) * g1next * g1s;
        rep.gamma2_from_monic = relative(coeff_distance(g2s, derived), g2s.max_abs());
        rep.gamma2_from_monic_printed = relative(coeff_distance(g2s, printed), g2s.max_abs());
    }
    return rep;
}

Real commutator_residual(const FirstOrderOp& E, const HyperOp& D, int N, int dmax) {
    Real worst = 0;
    for (int k = 0; k <= dmax; ++k)
        for (int r = 0; r < N; ++r)
            for (int s = 0; s < N; ++s) {
                Matrix e = zeros(N);
                e(r, s) = 1;
                const MatPoly P = MatPoly::monomial(e, k);
                const MatPoly a = apply_hyper(apply_first(P, E), D);
                const MatPoly b = apply_first(apply_hyper(P, D), E);
                worst = std::max(worst, relative(coeff_distance(a, b), std::max(a.max_abs(), b.max_abs())));
            }
    return worst;
}

CommutingReport commuting_E_check(int twoEll, Real nu, int dmax, EVariant variant) {
    if (twoEll < 1) throw std::invalid_argument("commuting operator needs ell >= 1/2");
    if (!(nu >= 1)) throw std::invalid_argument("commuting operator check needs nu >= 1");
    const FamilyDescriptor fam = family_su2(twoEll);
    const Real kappa = nu - 1;
    const FirstOrderOp& E = *fam.E;
    FirstOrderOp Ek = E;
    if (variant == EVariant::Printed) Ek.A0 = E.A0 + nu * (E.A0 + E.B1);
    else Ek.A0 = E.A0 + kappa * E.B1;

    DeformationChain chain(fam);
    const DeformedFamily& df = chain.at(kappa);
    CommutingReport rep;
    rep.commutator = commutator_residual(Ek, df.D, fam.N, dmax);

    const MonicSequence seq = monic_mvops(df, dmax);
    for (int d = 0; d <= dmax; ++d) {
        const Matrix lambda = variant == EVariant::Printed ? Matrix(d * E.B1 + E.A0 + nu * (E.B1 + E.A0))
                                                           : Matrix(d * E.B1 + E.A0 + kappa * E.B1);
        const MatPoly qe = apply_first(seq.polys[d], Ek);
        rep.eigen = std::max(rep.eigen, relative(coeff_distance(qe, lambda * seq.polys[d]), qe.max_abs()));
    }
    const RightOp op = [&](const MatPoly& p) { return apply_first(p, Ek); };
    rep.symmetric_same = symmetry_check(seq, op);
    rep.symmetric_next = symmetry_check(monic_mvops(chain.at(kappa + 1), dmax), op);
    return rep;
}

ScalarShiftReport scalar_shift_ops(Real alpha, Real beta, int dmax) {
    const FamilyDescriptor fam = family_scalar_jacobi(alpha, beta);
    const DeformedFamily df = deformed_weight(fam, 0);
    const MonicSequence seq = monic_mvops(df, dmax);
    const Real nan = std::numeric_limits<Real>::quiet_NaN();
    const int order = default_order(dmax + 1, 0);
    auto images_residual = [&](Real a, Real b, const std::function<MatPoly(const MatPoly&)>& op, int from) {
        if (!(a > -1) || !(b > -1)) return nan;
        const WeightedRule wr(gauss_jacobi_rule(a, b, order), [](Real) { return identity(1); });
        std::vector<MatPoly> images;
        for (int d = from; d <= dmax; ++d) images.push_back(op(seq.polys[d]));
        return cross_gram_residual(images, wr);
    };
    ScalarShiftReport r;
    r.g_plus = images_residual(alpha + 1, beta + 1, [](const MatPoly& p) { return p.derivative(); }, 1);
    r.g_minus = images_residual(alpha - 1, beta - 1, [&](const MatPoly& p) {
        return scalar_poly({0, -2, 2}, 1) * p.derivative() + scalar_poly({-(alpha + beta) + alpha - beta, 2 * (alpha + beta)}, 1) * p;
    }, 0);
    r.e_plus = images_residual(alpha + 1, beta - 1, [&](const MatPoly& p) {
        return p.derivative().times_y() + Complex(beta) * p;
    }, 0);
    r.e_minus = images_residual(alpha - 1, beta + 1, [&](const MatPoly& p) {
        return scalar_poly({-1, 1}, 1) * p.derivative() + Complex(alpha) * p;
    }, 0);
    return r;
}

}  // namespace mvop
