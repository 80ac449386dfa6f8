#include <doctest.h>

#include <cmath>

#include "ddest/rng.hpp"

using namespace ddest;

TEST_SUITE("rng") {

TEST_CASE("same seed, same stream") {
    Rng a(123), b(123);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("derived streams differ by key") {
    CHECK(Rng::derive(1, {0, 0}) != Rng::derive(1, {0, 1}));
    CHECK(Rng::derive(1, {0, 1}) != Rng::derive(1, {1, 0}));
    CHECK(Rng::derive(1, {2, 3}) == Rng::derive(1, {2, 3}));
}

TEST_CASE("uniform moments") {
    Rng rng(7);
    const int n = 200000;
    double sum = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
        sq += u * u;
    }
    CHECK(std::abs(sum / n - 0.5) < 0.005);
    CHECK(std::abs(sq / n - 1.0 / 3.0) < 0.005);
}

TEST_CASE("normal moments") {
    Rng rng(11);
    const int n = 200000;
    double sum = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sq += x * x;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sq / n - 1.0) < 0.02);
}

TEST_CASE("complex normal variance split") {
    Rng rng(13);
    const int n = 100000;
    double re2 = 0, im2 = 0;
    for (int i = 0; i < n; ++i) {
        const auto z = rng.complex_normal(4.0);
        re2 += z.real() * z.real();
        im2 += z.imag() * z.imag();
    }
    CHECK(re2 / n == doctest::Approx(2.0).epsilon(0.02));
    CHECK(im2 / n == doctest::Approx(2.0).epsilon(0.02));
}

}  // TEST_SUITE
