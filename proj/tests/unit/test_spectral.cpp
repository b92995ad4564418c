#include <doctest.h>

#include <cmath>
#include <vector>

#include "relucost/errors.hpp"
#include "relucost/spectral.hpp"

using namespace relucost;
using boost::multiprecision::cpp_int;

TEST_CASE("harmonic dimensions match the classical closed forms") {
    CHECK(harmonic_dim(3, 0) == 1);
    for (int d = 2; d <= 10; ++d) CHECK(harmonic_dim(d, 1) == d);
    for (int n = 0; n <= 10; ++n) {
        CHECK(harmonic_dim(3, n) == 2 * n + 1);
        CHECK(harmonic_dim(4, n) == cpp_int(n + 1) * (n + 1));
    }
    CHECK_THROWS_AS(harmonic_dim(1, 2), UsageError);
    CHECK_THROWS_AS(harmonic_dim(3, -1), UsageError);
}

TEST_CASE("harmonic dimensions satisfy the branching recurrence") {
    // N_{d,n} = N_{d-1,n} + N_{d,n-1}: restriction of harmonics to a subsphere.
    for (int d = 3; d <= 12; ++d)
        for (int n = 1; n <= 24; ++n)
            CHECK(harmonic_dim(d, n) == harmonic_dim(d - 1, n) + harmonic_dim(d, n - 1));
}

TEST_CASE("growth crossover N_{d,2d} > 2^d first happens at d = 3") {
    CHECK(harmonic_dim(2, 4) == 2);
    CHECK(harmonic_dim(2, 4) <= cpp_int(1) << 2);
    CHECK(harmonic_dim(3, 6) == 13);
    CHECK(harmonic_dim(3, 6) > cpp_int(1) << 3);
}

TEST_CASE("polynomial distance reproduces closed-form cases") {
    // d = 3 gives the uniform law on [-1, 1]; the distance from t^2 to
    // degree-<2 polynomials is sqrt(1/5 - 1/9).
    const PolyDistanceResult sq = poly_distance_A(
        3, 2, [](double t) { return t * t; }, {0.0});
    CHECK(sq.g_norm_sq == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(sq.a == doctest::Approx(2.0 / std::sqrt(45.0)).epsilon(1e-11));
    CHECK(sq.pythagoras_gap <= 1e-12);
    CHECK(sq.coeffs.size() == 2);

    // d = 2 gives the arcsine law; the distance from t to constants is
    // sqrt(E[t^2]) = sqrt(1/2).
    const PolyDistanceResult lin = poly_distance_A(
        2, 1, [](double t) { return t; }, {0.0});
    CHECK(lin.a == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-11));

    // A polynomial of lower degree projects to zero distance.
    const PolyDistanceResult poly = poly_distance_A(
        5, 4, [](double t) { return 3.0 * t * t * t - t + 0.5; }, {0.0});
    // The distance is the root of an eps-level cancellation, so its floor
    // sits near 1e-8 rather than at zero.
    CHECK(poly.a <= 1e-7);

    CHECK_THROWS_AS(poly_distance_A(1, 2, [](double t) { return t; }, {}), UsageError);
    CHECK_THROWS_AS(poly_distance_A(3, 0, [](double t) { return t; }, {}), UsageError);
}

TEST_CASE("target profile is piecewise linear between its breakpoints") {
    for (int d : {2, 4}) {
        const std::vector<double> bp = target_profile_breakpoints(d);
        REQUIRE(bp.size() == std::size_t(6 * d + 2));
        const double edge = 1.0 / std::sqrt(double(d));
        for (std::size_t i = 0; i < bp.size(); ++i) {
            CHECK(std::abs(bp[i]) <= edge + 1e-15);
            if (i > 0) CHECK(bp[i] > bp[i - 1]);
        }
        CHECK(bp.front() == doctest::Approx(-edge).epsilon(1e-15));
        CHECK(bp.back() == doctest::Approx(edge).epsilon(1e-15));

        for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
            const double mid = 0.5 * (bp[i] + bp[i + 1]);
            const double chord = 0.5 * (target_profile(d, bp[i]) + target_profile(d, bp[i + 1]));
            CHECK(std::abs(target_profile(d, mid) - chord) <= 1e-10);
        }

        // Flat outside the band, peaks of unit height exactly at interior kinks.
        CHECK(target_profile(d, edge + 0.05) == 0.0);
        CHECK(target_profile(d, -edge - 0.05) == 0.0);
        double peak = 0.0;
        for (std::size_t i = 1; i + 1 < bp.size(); ++i) {
            const double v = std::abs(target_profile(d, bp[i]));
            peak = std::max(peak, v);
            CHECK(v <= 1.0 + 1e-12);
        }
        CHECK(peak >= 1.0 - 1e-9);
    }
}

TEST_CASE("the measured profile distance clears the named threshold at d = 3") {
    const PolyDistanceResult res = target_poly_distance(3, 6);
    CHECK(res.pythagoras_gap <= 1e-8);
    CHECK(res.a >= 1.0 / (5.0 * 2.718281828459045 * 3.141592653589793));
}
