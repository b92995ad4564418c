#include <doctest.h>

#include <cmath>
#include <map>
#include <string>

#include "relucost/bounds.hpp"
#include "relucost/compression.hpp"
#include "relucost/errors.hpp"
#include "relucost/geometry.hpp"

using namespace relucost;

TEST_CASE("rademacher bound has the pinned value and sample-size scaling") {
    // M + 2/3 = 1 collapses the formula to 4 sqrt(6) / sqrt(6) = 4.
    CHECK(rademacher_bound(1.0 / 3.0, 6) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(rademacher_bound(2.0, 100) ==
          doctest::Approx(rademacher_bound(2.0, 400) * 2.0).epsilon(1e-13));
    CHECK(rademacher_bound(5.0, 10) > rademacher_bound(4.0, 10));
    CHECK_THROWS_AS(rademacher_bound(-1.0, 10), UsageError);
    CHECK_THROWS_AS(rademacher_bound(1.0, 0), UsageError);
}

TEST_CASE("estimation bound is cubic in the cost and pinned at 520") {
    CHECK(kEstimationConstant == 520.0);
    const double delta = std::exp(-1.0);
    CHECK(estimation_error_bound(1.0, 1, delta) == doctest::Approx(520.0).epsilon(1e-12));
    CHECK(estimation_error_bound(2.0, 50, 0.1) ==
          doctest::Approx(8.0 * estimation_error_bound(1.0, 50, 0.1)).epsilon(1e-13));
    CHECK_THROWS_AS(estimation_error_bound(1.0, 10, 0.0), UsageError);
    CHECK_THROWS_AS(estimation_error_bound(1.0, 10, 1.0), UsageError);
}

TEST_CASE("the simplified estimation bound dominates the raw chain") {
    // The 520 constant absorbs the chain for M >= 1, delta <= 1/2.
    for (double M : {1.0, 2.0, 5.0, 10.0, 50.0}) {
        for (double delta : {0.5, 0.1, 0.01, 1e-6}) {
            for (long m : {1L, 10L, 10000L}) {
                CHECK(estimation_error_bound(M, m, delta) >=
                      estimation_error_chain(M, m, delta));
            }
        }
    }
}

TEST_CASE("interpolant cost bound matches its closed form and rejects d < 3") {
    // m = 2, d = 5, delta = 1/4: 16 sqrt(2) * 2^2 * 2 = 128 sqrt(2).
    CHECK(interpolant_cost_bound(2, 5, 0.25) ==
          doctest::Approx(128.0 * std::sqrt(2.0)).epsilon(1e-13));
    const double ratio = interpolant_cost_bound(40, 7, 0.1) / interpolant_cost_bound(20, 7, 0.1);
    CHECK(ratio == doctest::Approx(std::pow(2.0, 10.0 / 6.0)).epsilon(1e-13));
    CHECK_THROWS_AS(interpolant_cost_bound(10, 2, 0.1), UsageError);
    CHECK_THROWS_AS(interpolant_cost_bound(0, 4, 0.1), UsageError);
    CHECK_THROWS_AS(interpolant_cost_bound(10, 4, 1.0), UsageError);
}

TEST_CASE("sample-complexity formulas have the pinned literals") {
    const double delta = std::exp(-1.0);
    CHECK(kM3Constant == 1.0);
    CHECK(m3_sample_complexity(1.0, delta, 3, 1.0, 1.0) ==
          doctest::Approx(4096.0).epsilon(1e-12));
    CHECK(m3_sample_complexity(1.0, delta, 3, 1.0, 2.0) ==
          doctest::Approx(64.0 * 4096.0).epsilon(1e-12));
    CHECK(separation_sample_size(0.1, delta, 2) ==
          doctest::Approx(3276800.0).epsilon(1e-12));
    CHECK(separation_sample_size(0.1, delta, 2) ==
          separation_sample_size(0.1, delta, 2, 15.0));
    CHECK_THROWS_AS(m3_sample_complexity(0.0, 0.1, 3, 1.0, 1.0), UsageError);
    CHECK_THROWS_AS(separation_sample_size(0.1, 0.1, 0), UsageError);
}

TEST_CASE("named thresholds hold their closed-form values") {
    const double e = 2.718281828459045;
    const double pi = 3.141592653589793;
    CHECK(kSeparationThresholdA == doctest::Approx(1.0 / (5.0 * e * pi)).epsilon(1e-15));
    CHECK(kSpectralMassThreshold ==
          doctest::Approx(1.0 / (50.0 * e * e * pi * pi)).epsilon(1e-15));
    CHECK(kSeparationThresholdB == 1e-4);
    // The mass threshold is exactly half the squared distance threshold.
    CHECK(kSpectralMassThreshold ==
          doctest::Approx(kSeparationThresholdA * kSeparationThresholdA / 2.0).epsilon(1e-14));
}

TEST_CASE("evaluate_bound mirrors the direct functions and validates inputs") {
    using Inputs = std::map<std::string, double>;

    const BoundReport rad = evaluate_bound("rademacher", Inputs{{"M", 2.0}, {"m", 50}});
    CHECK(rad.value == rademacher_bound(2.0, 50));
    CHECK(!rad.formula.empty());
    CHECK(rad.id == "rademacher");

    CHECK(evaluate_bound("estimation", Inputs{{"M", 2.0}, {"m", 50}, {"delta", 0.1}}).value ==
          estimation_error_bound(2.0, 50, 0.1));
    CHECK(evaluate_bound("tent", Inputs{{"m", 20}, {"d", 4}, {"delta", 0.1}}).value ==
          interpolant_cost_bound(20, 4, 0.1));
    CHECK(evaluate_bound("collision", Inputs{{"d", 4}, {"m", 20}, {"eta", 0.1}}).value ==
          collision_probability_bound(4, 20, 0.1));
    CHECK(evaluate_bound("maurey", Inputs{{"A", 2.0}, {"omega", 16}}).value ==
          maurey_error_bound(2.0, 16));
    CHECK(evaluate_bound("m3",
                         Inputs{{"eps", 0.05}, {"delta", 0.1}, {"d", 4}, {"m2", 100}, {"alpha", 2}})
              .value == m3_sample_complexity(0.05, 0.1, 4, 100.0, 2.0));

    // The sample threshold takes an optional exponent; omitting it means 15.
    const double with_default =
        evaluate_bound("sample", Inputs{{"eps", 0.1}, {"delta", 0.1}, {"d", 3}}).value;
    CHECK(with_default == separation_sample_size(0.1, 0.1, 3, 15.0));
    CHECK(evaluate_bound("sample",
                         Inputs{{"eps", 0.1}, {"delta", 0.1}, {"d", 3}, {"exponent", 4}})
              .value == separation_sample_size(0.1, 0.1, 3, 4.0));

    CHECK_THROWS_AS(evaluate_bound("nonsense", Inputs{}), UsageError);
    CHECK_THROWS_AS(evaluate_bound("rademacher", Inputs{{"M", 2.0}}), UsageError);
    CHECK_THROWS_AS(evaluate_bound("rademacher", Inputs{{"M", 2.0}, {"m", 2.5}}), UsageError);
}
