#include "doctest.h"

#include <cmath>

#include "mvop/engine.hpp"
#include "mvop/suite.hpp"

using namespace mvop;

namespace {

RightOp hyper(const HyperOp& D) {
    return [D](const MatPoly& P) { return apply_hyper(P, D); };
}

}  // namespace

TEST_CASE("shifted Legendre: Q2, B0 and C1") {
    const DeformedFamily df = deformed_weight(family_scalar_jacobi(0, 0), 0);
    const MonicSequence seq = monic_mvops(df, 3);
    // Q2 = y^2 - y + 1/6
    const MatPoly& q2 = seq.polys[2];
    CHECK(std::abs(q2.coeff(0)(0, 0) - Complex(Real(1) / 6)) < 1e-15);
    CHECK(std::abs(q2.coeff(1)(0, 0) - Complex(-1)) < 1e-15);
    CHECK(std::abs(q2.coeff(2)(0, 0) - Complex(1)) < 1e-15);

    const RecurrenceData rec = three_term(seq);
    CHECK(std::abs(rec.B[0](0, 0) - Complex(0.5)) < 1e-15);
    CHECK(std::abs(rec.C[1](0, 0) - Complex(Real(1) / 12)) < 1e-15);
    CHECK(rec.residual < 1e-13);
}

TEST_CASE("scalar eigenvalue -n(n+1) and identity mapped to -V") {
    const DeformedFamily df = deformed_weight(family_scalar_jacobi(0, 0), 0);
    const EigenData eig = eigen_check(monic_mvops(df, 4), df.D);
    CHECK(std::abs(eig.lambdas[3](0, 0) - Complex(-12)) < 1e-12);
    CHECK(eig.max_residual < 1e-12);

    const DeformedFamily su = deformed_weight(family_su2(2), 1);
    const MatPoly image = apply_hyper(MatPoly::identity(3), su.D);
    CHECK(coeff_distance(image, MatPoly::constant(-su.D.V)) < 1e-15);
}

TEST_CASE("su2 ell 1: Lambda_2 = diag(-12, -11, -12) at kappa 0") {
    const DeformedFamily df = deformed_weight(family_su2(2), 0);
    const EigenData eig = eigen_check(monic_mvops(df, 3), df.D);
    CHECK(max_abs(eig.lambdas[2] - su2_lambda_closed_form(2, 2)) < 1e-10);
}

TEST_CASE("orthogonality, symmetry and recurrence on the family grid") {
    for (const FamilyDescriptor& f : {family_su2(1), family_su2(3), family_a1(3, 1, 2), family_c1(4)})
        for (Real k : {Real(0), Real(1.5)}) {
            const DeformedFamily df = deformed_weight(f, k);
            const MonicSequence seq = monic_mvops(df, 6);
            CAPTURE(f.label());
            CAPTURE(static_cast<double>(k));
            CHECK(seq.cross_residual < 1e-11);
            CHECK(three_term(seq).residual < 1e-11);
            CHECK(symmetry_check(seq, hyper(df.D)) < 1e-11);
            CHECK(eigen_check(seq, df.D).max_residual < 1e-11);
            for (const Matrix& g : seq.norms) {
                Eigen::SelfAdjointEigenSolver<Matrix> es(g);
                CHECK(es.eigenvalues().minCoeff() > 0);
            }
        }
}

TEST_CASE("recurrence construction agrees with Gram-Schmidt") {
    const DeformedFamily df = deformed_weight(family_a1(4, 2, 1), 0.5);
    const MonicSequence a = monic_mvops(df, 6), b = monic_by_recurrence(df, 6);
    for (int d = 0; d <= 6; ++d) CHECK(coeff_distance(a.polys[d], b.polys[d]) < 1e-10 * std::max<Real>(1, a.polys[d].max_abs()));
}

TEST_CASE("shift pair: fits, weight identity and derivative shift") {
    DeformationChain chain(family_c1(3));
    for (Real k : {Real(0), Real(1)}) {
        const GammaPair gp = gamma_pair(chain.at(k), chain.at(k + 1));
        CHECK(gp.residual2 / std::max<Real>(1, gp.scale2) < 1e-10);
        CHECK(gp.residual1 / std::max<Real>(1, gp.scale1) < 1e-10);
        CHECK(gp.weight_residual < 1e-9);
        CHECK(gp.derivative_residual < 1e-9);
        CHECK(coeff_distance(gp.gamma2, c1_gamma2_display(3, k)) < 1e-9);
        CHECK(coeff_distance(gp.gamma1, c1_gamma1_display(3, k)) < 1e-9);
        const MonicSequence s0 = monic_mvops(chain.at(k), 6), s1 = monic_mvops(chain.at(k + 1), 5);
        CHECK(shift_check(s0, s1) < 1e-9);
        const RightOp op = [&](const MatPoly& P) { return apply_gamma(P, gp); };
        CHECK(symmetry_check(s0, op) < 1e-9);
    }
}

TEST_CASE("su2 Gamma2 closed form holds with the consistent sign") {
    DeformationChain chain(family_su2(2));
    for (Real k : {Real(0), Real(1)}) {
        const GammaPair gp = gamma_pair(chain.at(k), chain.at(k + 1));
        const Real nu = k + 1, l = 1;
        Real plus = 0, minus = 0;
        for (Real y : {Real(0.2), Real(0.45), Real(0.8)}) {
            const Matrix g = 4 * nu * (nu + 2 * l) / (l * l) * gp.gamma2(y);
            plus = std::max(plus, max_abs(g - su2_gamma2_closed_form(2, nu, y, 1)) / max_abs(g));
            minus = std::max(minus, max_abs(g - su2_gamma2_closed_form(2, nu, y, -1)) / max_abs(g));
        }
        CHECK(plus < 1e-9);
        CHECK(minus > 1e-3);
    }
}

TEST_CASE("Rodrigues formula reproduces the monic polynomials") {
    for (const FamilyDescriptor& f : {family_su2(2), family_a1(3, 1, 1), family_scalar_jacobi(0.5, 1.5)}) {
        DeformationChain chain(f);
        const MonicSequence ref = monic_mvops(chain.at(0.5), 4);
        for (int d = 0; d <= 4; ++d) {
            const RodriguesResult r = rodrigues(chain, 0.5, d);
            CAPTURE(f.label());
            CHECK(r.fit_residual < 1e-9);
            CHECK(coeff_distance(r.Q, ref.polys[d]) < 1e-9 * std::max<Real>(1, ref.polys[d].max_abs()));
        }
    }
}

TEST_CASE("raising relation: corrected forms hold, printed index fails") {
    DeformationChain chain(family_scalar_jacobi(0, 0));
    const RaisingReport r = raising_check(chain, 0, 4);
    CHECK(r.adjoint < 1e-10);
    CHECK(r.monic_relation < 1e-10);
    CHECK(r.gamma1_from_monic < 1e-10);
    CHECK(r.gamma2_from_monic < 1e-10);
    CHECK(r.monic_relation_printed > 1e-3);
    CHECK(r.gamma2_from_monic_printed > 1e-3);
}

TEST_CASE("first-order commuting operator for su2") {
    for (Real nu : {Real(1), Real(2), Real(3.5)}) {
        const CommutingReport c = commuting_E_check(2, nu, 5, EVariant::Corrected);
        CHECK(c.commutator < 1e-10);
        CHECK(c.eigen < 1e-10);
        CHECK(c.symmetric_same < 1e-10);
        CHECK(c.symmetric_next > 1e-3);
    }
    const CommutingReport printed = commuting_E_check(2, 2, 5, EVariant::Printed);
    CHECK(printed.eigen > 1e-3);
}

TEST_CASE("scalar shift operators") {
    const ScalarShiftReport r = scalar_shift_ops(1, 0.5, 6);
    CHECK(r.g_plus < 1e-10);
    CHECK(r.g_minus < 1e-10);
    CHECK(r.e_plus < 1e-10);
    CHECK(r.e_minus < 1e-10);
    // lowering the y-exponent below -1 is not defined
    CHECK(std::isnan(static_cast<double>(scalar_shift_ops(0.5, -0.5, 4).g_minus)));
}

TEST_CASE("perturbing T breaks Gamma1 while the Gamma2 fit stays polynomial") {
    const FamilyDescriptor f = family_su2(2);
    Matrix T = solve_T(f, 0).T;
    T(1, 1) *= Real(1.05);
    const DeformedFamily bad = deformed_with(f, 0, T, deform_operator(f, 0));
    const DeformedFamily next = deformed_weight(f, 1);
    const GammaPair gp = gamma_pair(bad, next);
    CHECK(gp.residual2 / std::max<Real>(1, gp.scale2) < 1e-10);
    CHECK(gp.residual1 / std::max<Real>(1, gp.scale1) > 1e-4);
    CHECK(gp.derivative_residual > 1e-4);
    CHECK(eigen_check(monic_mvops(bad, 4), bad.D).max_residual > 1e-4);
}

TEST_CASE("commutator residual detects a non-commuting pair") {
    const FamilyDescriptor f = family_su2(2);
    REQUIRE(f.E.has_value());
    CHECK(commutator_residual(*f.E, deform_operator(f, 0), 3, 4) < 1e-12);
    FirstOrderOp off = *f.E;
    off.A0(0, 1) += Real(1);
    CHECK(commutator_residual(off, deform_operator(f, 0), 3, 4) > 1e-3);
}

TEST_CASE("suite runner") {
    SuiteConfig cfg{family_su2(1), 0.5, 4};
    const auto all = run_suite(cfg);
    CHECK(all_passed(all));
    CHECK(all.size() > 15);
    const Json j = check_to_json(all.front());
    for (const char* key : {"id", "ref", "params", "residual", "tolerance", "status"}) CHECK(j.contains(key));

    cfg.suite = "krawtchouk";
    for (const auto& c : run_suite(cfg)) CHECK(c.id.rfind("krawtchouk.", 0) == 0);

    cfg.family = family_c1(3);
    cfg.suite = "commutator";
    const auto skipped = run_suite(cfg);
    REQUIRE(skipped.size() == 1);
    CHECK(skipped[0].status == "skipped");
    CHECK(all_passed(skipped));

    cfg.suite = "nonsense";
    CHECK_THROWS_AS(run_suite(cfg), std::invalid_argument);

    cfg.suite = "ortho";
    cfg.tolerance_scale = 1e-30;
    CHECK_FALSE(all_passed(run_suite(cfg)));
}

TEST_CASE("suite runner is deterministic") {
    const SuiteConfig cfg{family_a1(3, 1, 1), 1, 4, "rodrigues"};
    const auto a = run_suite(cfg), b = run_suite(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].residual == b[k].residual);
}
