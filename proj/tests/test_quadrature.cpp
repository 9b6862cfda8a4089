#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>

#include "mvop/quadrature.hpp"

using namespace mvop;

namespace {

// B(p, q) through lgamma, in the build precision.
Real beta_fn(Real p, Real q) { return std::exp(std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q)); }

Real integrate(const QuadRule& r, const std::function<Real(Real)>& f) {
    Real s = 0;
    for (int k = 0; k < r.order(); ++k) s += r.weights[k] * f(r.nodes[k]);
    return s;
}

}  // namespace

TEST_CASE("Gauss-Legendre on [0,1], three nodes") {
    const QuadRule r = gauss_jacobi_rule(0, 0, 3);
    REQUIRE(r.order() == 3);
    const Real s = std::sqrt(Real(15)) / 10;
    CHECK(static_cast<double>(r.nodes[0]) == doctest::Approx(0.5 - static_cast<double>(s)).epsilon(1e-14));
    CHECK(static_cast<double>(r.nodes[1]) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(static_cast<double>(r.weights[0]) == doctest::Approx(5.0 / 18).epsilon(1e-14));
    CHECK(static_cast<double>(r.weights[1]) == doctest::Approx(8.0 / 18).epsilon(1e-14));
}

TEST_CASE("mass equals the Beta function") {
    for (auto [a, b] : {std::pair<Real, Real>{0, 0}, {0.5, 0.5}, {2, 0}, {3, 1}, {-0.5, 1.5}}) {
        const QuadRule r = gauss_jacobi_rule(a, b, 12);
        const Real m = integrate(r, [](Real) { return Real(1); });
        CHECK(std::abs(m - jacobi_mass(a, b)) < 1e-14 * jacobi_mass(a, b));
        CHECK(std::abs(jacobi_mass(a, b) - beta_fn(b + 1, a + 1)) < 1e-14);
    }
}

TEST_CASE("exact up to degree 2n-1 for y^k moments") {
    // int y^{beta+k} (1-y)^alpha = B(beta+k+1, alpha+1)
    for (auto [a, b] : {std::pair<Real, Real>{0.5, 0.5}, {4, 0}, {7, 1}}) {
        const int n = 8;
        const QuadRule r = gauss_jacobi_rule(a, b, n);
        for (int k = 0; k <= 2 * n - 1; ++k) {
            const Real exact = beta_fn(b + k + 1, a + 1);
            const Real got = integrate(r, [k](Real y) { return std::pow(y, Real(k)); });
            CHECK(std::abs(got - exact) < 1e-13 * exact);
        }
    }
}

TEST_CASE("doubling the order leaves polynomial integrals unchanged") {
    const auto f = [](Real y) { return 1 - 3 * y + 7 * y * y * y * y * y; };
    for (int n : {4, 6, 10}) {
        const Real a = integrate(gauss_jacobi_rule(1.5, 0.5, n), f);
        const Real b = integrate(gauss_jacobi_rule(1.5, 0.5, 2 * n), f);
        CHECK(std::abs(a - b) < 1e-14);
    }
}

TEST_CASE("nodes lie strictly inside (0,1) and weights are positive") {
    const QuadRule r = gauss_jacobi_rule(5, 1, 30);
    for (int k = 0; k < r.order(); ++k) {
        CHECK(r.nodes[k] > 0);
        CHECK(r.nodes[k] < 1);
        CHECK(r.weights[k] > 0);
        if (k > 0) CHECK(r.nodes[k] > r.nodes[k - 1]);
    }
}

TEST_CASE("default order covers the integrand degree") {
    for (int dmax : {0, 3, 8})
        for (int wdeg : {0, 2, 6}) CHECK(2 * default_order(dmax, wdeg) - 1 >= 2 * dmax + wdeg);
}

TEST_CASE("matrix inner product of constants is the weighted mass") {
    const QuadRule r = gauss_jacobi_rule(0.5, 0.5, 6);
    const MatFn w = [](Real y) {
        Matrix m(2, 2);
        m << 1 + y, 0, 0, 2;
        return m;
    };
    const Matrix G = matrix_inner_product(MatPoly::identity(2), MatPoly::identity(2), w, r);
    // int (1+y) y^{1/2}(1-y)^{1/2} = B(3/2,3/2) + B(5/2,3/2) = pi/8 + pi/16
    const Real pi = std::acos(Real(-1));
    CHECK(std::abs(G(0, 0).real() - 3 * pi / 16) < 1e-14);
    CHECK(std::abs(G(1, 1).real() - pi / 4) < 1e-14);
    CHECK(std::abs(G(0, 1)) == 0);

    const WeightedRule wr(r, w);
    CHECK(max_abs(matrix_inner_product(MatPoly::identity(2), MatPoly::identity(2), wr) - G) < 1e-16);
}

TEST_CASE("rule_csv has a header and one row per node") {
    const std::string csv = rule_csv(gauss_jacobi_rule(0, 0, 4));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "node,weight");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 4);
}
