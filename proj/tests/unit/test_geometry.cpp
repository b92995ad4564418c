#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "relucost/constructions.hpp"
#include "relucost/errors.hpp"
#include "relucost/geometry.hpp"
#include "relucost/quadrature.hpp"

using namespace relucost;
using test_helpers::make_net;

TEST_CASE("product-sphere samples sit on the spheres and chunk independently") {
    const SphereDataset big = sample_product_sphere(3, 40, 7);
    CHECK(max_half_norm_deviation(big) <= 1e-12);

    const SphereDataset small = sample_product_sphere(3, 20, 7);
    CHECK((big.X.leftCols(20) - small.X).cwiseAbs().maxCoeff() == 0.0);

    const SphereDataset other = sample_product_sphere(3, 20, 8);
    CHECK((other.X - small.X).cwiseAbs().maxCoeff() > 0.0);

    CHECK_THROWS_AS(sample_product_sphere(0, 5, 1), UsageError);
    CHECK_THROWS_AS(sample_product_sphere(3, 0, 1), UsageError);
}

TEST_CASE("the inner-product law has the closed-form distribution") {
    // d = 3: t is uniform on [-1, 1]; d = 2: arcsine law.
    for (double t : {-0.9, -0.3, 0.0, 0.5, 0.99}) {
        CHECK(ip_cdf(3, t) == doctest::Approx((1.0 + t) / 2.0).epsilon(1e-12));
        CHECK(ip_cdf(2, t) ==
              doctest::Approx(1.0 - std::acos(t) / 3.141592653589793).epsilon(1e-11));
    }

    // Total density mass, with the endpoint factor handled by a Jacobi rule.
    const QuadRule flat = gauss_legendre(10);
    CHECK(flat.apply([](double t) { return ip_density(5, t); }) ==
          doctest::Approx(1.0).epsilon(1e-13));
    const QuadRule half = gauss_jacobi(10, 0.5, 0.5);
    const double c4 = ip_density(4, 0.0);
    CHECK(half.apply([](double) { return 1.0; }) * c4 == doctest::Approx(1.0).epsilon(1e-12));

    // Density is the derivative of the distribution function.
    const double h = 1e-6;
    for (double t : {-0.4, 0.0, 0.3}) {
        const double slope = (ip_cdf(4, t + h) - ip_cdf(4, t - h)) / (2.0 * h);
        CHECK(std::abs(slope - ip_density(4, t)) <= 1e-6);
    }
}

TEST_CASE("sampled inner products follow the law to KS accuracy") {
    const int d = 4, m = 20000;
    const SphereDataset data = sample_product_sphere(d, m, 11);
    std::vector<double> t(m);
    for (int j = 0; j < m; ++j)
        t[j] = data.X.col(j).head(d).dot(data.X.col(j).tail(d));
    std::sort(t.begin(), t.end());
    double ks = 0.0;
    for (int j = 0; j < m; ++j) {
        const double F = ip_cdf(d, t[j]);
        ks = std::max(ks, std::abs(F - (j + 1.0) / m));
        ks = std::max(ks, std::abs(F - double(j) / m));
    }
    CHECK(ks <= 0.02);
}

TEST_CASE("min_pairwise_distance agrees with brute force and sees planted pairs") {
    const Eigen::MatrixXd X = test_helpers::random_points(13, 6, 12);
    double brute = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 12; ++i)
        for (int j = i + 1; j < 12; ++j)
            brute = std::min(brute, (X.col(i) - X.col(j)).norm());
    CHECK(min_pairwise_distance(X) == doctest::Approx(brute).epsilon(1e-14));

    Eigen::MatrixXd planted = X;
    planted.col(7) = planted.col(3);
    planted(0, 7) += 1e-6;
    CHECK(min_pairwise_distance(planted) == doctest::Approx(1e-6).epsilon(1e-12));

    CHECK_THROWS_AS(min_pairwise_distance(X.leftCols(1)), UsageError);
}

TEST_CASE("collision bound is the literal polynomial") {
    CHECK(collision_probability_bound(4, 20, 0.1) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(collision_probability_bound(3, 10, 0.5) == doctest::Approx(25.0).epsilon(1e-14));
    CHECK_THROWS_AS(collision_probability_bound(1, 10, 0.5), UsageError);
}

TEST_CASE("labels come from the target and stay inside [-1, 1]") {
    SphereDataset data = sample_product_sphere(3, 50, 19);
    label_with_target(data);
    REQUIRE(data.labeled());
    for (int j = 0; j < data.m(); ++j) {
        CHECK(std::abs(data.y[j]) <= 1.0);
        CHECK(data.y[j] == target_f(3, data.X.col(j)));
    }
}

TEST_CASE("Monte Carlo distances vanish on the function and see constants exactly") {
    const ReluNet net = make_net(61, 4, {10});
    const RefFn same = [&net](const Eigen::Ref<const Eigen::VectorXd>& x) {
        return evaluate(net, x);
    };
    const McEstimate zero = mc_l2_distance(net, 2, same, 2000, 3);
    CHECK(zero.value <= 1e-12);
    CHECK(zero.n == 2000);

    const RefFn shifted = [&net](const Eigen::Ref<const Eigen::VectorXd>& x) {
        return evaluate(net, x) + 0.25;
    };
    const McEstimate c = mc_l2_distance(net, 2, shifted, 2000, 3);
    CHECK(c.value == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(c.se <= 1e-10);
    CHECK(mc_sup_distance(net, 2, shifted, 2000, 3) == doctest::Approx(0.25).epsilon(1e-10));

    CHECK_THROWS_AS(mc_l2_distance(net, 3, same, 100, 1), ShapeError);
}
