#include <doctest.h>

#include <cmath>

#include "relucost/quadrature.hpp"

using namespace relucost;

namespace {

// Exact Jacobi moment: int_{-1}^{1} (1-x)^a (1+x)^(b+j) dx.
double jacobi_moment(double a, double b, int j) {
    return std::pow(2.0, a + b + j + 1) *
           std::exp(std::lgamma(a + 1.0) + std::lgamma(b + j + 1.0) -
                    std::lgamma(a + b + j + 2.0));
}

}  // namespace

TEST_CASE("legendre rules integrate monomials exactly up to degree 2Q-1") {
    for (int Q : {1, 2, 5, 8, 16}) {
        const QuadRule rule = gauss_legendre(Q);
        REQUIRE(rule.nodes.size() == Q);
        for (int j = 0; j <= 2 * Q - 1; ++j) {
            const double got = rule.apply([j](double x) { return std::pow(x, j); });
            const double expect = (j % 2 == 1) ? 0.0 : 2.0 / (j + 1);
            CHECK(std::abs(got - expect) <= 1e-12);
        }
    }
}

TEST_CASE("jacobi rules reproduce closed-form beta-function moments") {
    const double a = 1.5, b = 0.5;
    const QuadRule rule = gauss_jacobi(8, a, b);
    for (int j = 0; j <= 6; ++j) {
        const double got = rule.apply([j](double x) { return std::pow(1.0 + x, j); });
        const double expect = jacobi_moment(a, b, j);
        CHECK(std::abs(got - expect) <= 1e-12 * expect);
    }

    // Total mass alone, for an asymmetric weight.
    const QuadRule mass = gauss_jacobi(3, 2.0, 0.0);
    CHECK(mass.apply([](double) { return 1.0; }) ==
          doctest::Approx(jacobi_moment(2.0, 0.0, 0)).epsilon(1e-13));
}

TEST_CASE("the chebyshev case has closed-form nodes and equal weights") {
    const int Q = 7;
    const QuadRule rule = gauss_jacobi(Q, -0.5, -0.5);
    const double pi = 3.141592653589793238462643383279;
    for (int i = 0; i < Q; ++i) {
        // Ascending nodes: cos((2(Q-i)-1) pi / (2Q)).
        const double want = std::cos((2.0 * (Q - i) - 1.0) * pi / (2.0 * Q));
        CHECK(rule.nodes[i] == doctest::Approx(want).epsilon(1e-13));
        CHECK(rule.weights[i] == doctest::Approx(pi / Q).epsilon(1e-13));
    }
}

TEST_CASE("jacobi with zero exponents coincides with legendre") {
    const QuadRule leg = gauss_legendre(9);
    const QuadRule jac = gauss_jacobi(9, 0.0, 0.0);
    for (int i = 0; i < 9; ++i) {
        CHECK(jac.nodes[i] == doctest::Approx(leg.nodes[i]).epsilon(1e-13));
        CHECK(jac.weights[i] == doctest::Approx(leg.weights[i]).epsilon(1e-13));
    }
}

TEST_CASE("weighted polynomial exactness holds at the edge degree") {
    // Q-point Jacobi integrates p of degree 2Q-1 against the weight exactly;
    // (1+x)^(2Q-1) expands within the moment family above.
    const int Q = 5;
    const double a = 0.5, b = 1.5;
    const QuadRule rule = gauss_jacobi(Q, a, b);
    const int j = 2 * Q - 1;
    const double got = rule.apply([j](double x) { return std::pow(1.0 + x, j); });
    CHECK(got == doctest::Approx(jacobi_moment(a, b, j)).epsilon(1e-12));
}
