#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "edgebandit/rng.hpp"

using edgebandit::SeededSource;

TEST_CASE("same seed and stream reproduce the identical sequence") {
    SeededSource a(42, 0);
    SeededSource b(42, 0);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_unit() == b.next_unit());
        CHECK(a.next_normal() == b.next_normal());
        CHECK(a.next_below(97) == b.next_below(97));
    }
}

TEST_CASE("different streams of one seed are decoupled") {
    SeededSource a(42, 0);
    SeededSource b(42, 1);
    int equal = 0;
    for (int i = 0; i < 100; ++i) {
        if (a.next_unit() == b.next_unit()) {
            ++equal;
        }
    }
    CHECK(equal < 5);
}

TEST_CASE("next_unit stays in [0, 1)") {
    SeededSource src(7, 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = src.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("next_below respects the bound and covers small ranges") {
    SeededSource src(9, 0);
    std::vector<int> seen(5, 0);
    for (int i = 0; i < 5000; ++i) {
        const auto v = src.next_below(5);
        REQUIRE(v < 5);
        ++seen[v];
    }
    for (const int count : seen) {
        CHECK(count > 800);  // roughly uniform
    }
    CHECK(src.next_below(1) == 0);
    CHECK_THROWS_AS(src.next_below(0), std::invalid_argument);
}

TEST_CASE("normal draws have standard moments") {
    SeededSource src(123, 0);
    const int n = 100000;
    double sum = 0.0;
    double squares = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = src.next_normal();
        sum += x;
        squares += x * x;
    }
    const double mean = sum / n;
    const double var = squares / n - mean * mean;
    CHECK(std::fabs(mean) < 0.02);
    CHECK(std::fabs(std::sqrt(var) - 1.0) < 0.02);
}
