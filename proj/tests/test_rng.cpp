#include <doctest.h>

#include <cmath>
#include <set>

#include "cwork/rng.hpp"

using cwork::Rng;

TEST_CASE("same seed reproduces the exact stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 64; ++i) {
        CHECK(a.bits() == b.bits());
    }
    Rng c(42), d(42);
    for (int i = 0; i < 64; ++i) {
        CHECK(c.uniform() == d.uniform());
        CHECK(c.normal() == d.normal());
    }
}

TEST_CASE("uniform stays inside [0, 1)") {
    Rng rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("uniform_int covers the inclusive range") {
    Rng rng(3);
    std::set<int> seen;
    for (int i = 0; i < 1000; ++i) {
        const int v = rng.uniform_int(-2, 2);
        CHECK(v >= -2);
        CHECK(v <= 2);
        seen.insert(v);
    }
    CHECK(seen.size() == 5);
}

TEST_CASE("normal moments are approximately standard") {
    Rng rng(11);
    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("derived streams differ by label and are stable") {
    const auto a = Rng::derive(5, 0);
    const auto b = Rng::derive(5, 1);
    const auto c = Rng::derive(6, 0);
    CHECK(a != b);
    CHECK(a != c);
    CHECK(Rng::derive(5, 0) == a);
}
