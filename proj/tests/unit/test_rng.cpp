#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "relucost/rng.hpp"

using namespace relucost;

TEST_CASE("identical seeds replay the same stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("child streams do not collide with each other or the parent") {
    Rng root(7);
    Rng s0 = root.stream(0);
    Rng s1 = root.stream(1);
    Rng parent(7);
    for (int i = 0; i < 32; ++i) {
        const std::uint64_t a = s0.next_u64();
        CHECK(a != s1.next_u64());
        CHECK(a != parent.next_u64());
    }
}

TEST_CASE("uniform lands in [0,1) with the right first two moments") {
    Rng rng(123);
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    // Tolerances sit near 10 standard errors of the estimators.
    CHECK(std::abs(sum / n - 0.5) < 0.01);
    CHECK(std::abs(sum2 / n - 1.0 / 3.0) < 0.01);
}

TEST_CASE("normal has mean 0 and unit second moment to sampling accuracy") {
    Rng rng(99);
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        sum2 += z * z;
    }
    CHECK(std::abs(sum / n) < 0.02);
    CHECK(std::abs(sum2 / n - 1.0) < 0.03);
}

TEST_CASE("uniform_below covers every residue without visible bias") {
    Rng rng(5);
    std::vector<int> counts(10, 0);
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
        const std::uint64_t v = rng.uniform_below(10);
        REQUIRE(v < 10);
        ++counts[static_cast<int>(v)];
    }
    for (int c : counts) {
        CHECK(c > 4500);
        CHECK(c < 5500);
    }
}

TEST_CASE("seed_combine is deterministic and sensitive to both arguments") {
    CHECK(seed_combine(1, 2) == seed_combine(1, 2));
    CHECK(seed_combine(1, 2) != seed_combine(1, 3));
    CHECK(seed_combine(1, 2) != seed_combine(2, 2));
    CHECK(seed_combine(0, 0) != seed_combine(0, 1));
}
