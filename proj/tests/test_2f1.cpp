#include <doctest.h>

#include <random>

#include "riesz_tf/hyper2f1.hpp"

using namespace riesz_tf;

namespace {
// independent oracle: plain power series, converges for all z in [0,1)
double series_oracle(double a, double b, double c, double z) {
    double t = 1.0, s = 1.0;
    for (long n = 0; n < 4000000; ++n) {
        t *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        s += t;
        if (std::abs(t) < 1e-17 * std::abs(s))
            break;
    }
    return s;
}
} // namespace

TEST_CASE("digamma basics") {
    CHECK(digamma(1.0) == doctest::Approx(-0.5772156649015329).epsilon(1e-12));
    for (double x : {0.3, 1.7, 4.2})
        CHECK(digamma(x + 1.0) == doctest::Approx(digamma(x) + 1.0 / x).epsilon(1e-12));
    CHECK_THROWS_AS(digamma(-1.0), std::domain_error);
}

TEST_CASE("2F1 at z=0 and the classical closed form") {
    CHECK(gauss_2f1(0.7, 1.9, 2.3, 0.0) == doctest::Approx(1.0));
    // 2F1(1,1;2;z) = -log(1-z)/z
    CHECK(gauss_2f1(1, 1, 2, 0.3) == doctest::Approx(-std::log(0.7) / 0.3).epsilon(1e-10));
    CHECK(gauss_2f1(1, 1, 2, 0.3) == doctest::Approx(1.1889164797957748).epsilon(1e-10));
    CHECK(gauss_2f1(1, 1, 2, 0.85) == doctest::Approx(-std::log(0.15) / 0.85).epsilon(1e-10));
}

TEST_CASE("transformed evaluation matches direct series summation") {
    // parameter sets exercised by the kernel: generic, log case m=0, integer m=2,
    // and the degenerate b=c
    const double cases[][3] = {{1.5, 1.5, 1.0}, {0.5, 0.5, 1.0}, {2.25, 1.75, 1.5},
                               {1.25, 0.75, 1.5}, {0.75, 0.25, 1.5}, {2.0, 1.5, 1.5},
                               {1.6, 1.2, 2.7}};
    for (const auto& k : cases)
        for (double z : {0.55, 0.6, 0.7, 0.8, 0.9, 0.95}) {
            const double got = gauss_2f1(k[0], k[1], k[2], z);
            const double expect = series_oracle(k[0], k[1], k[2], z);
            CHECK(got == doctest::Approx(expect).epsilon(1e-10));
        }
}

TEST_CASE("random-parameter agreement (one-decimal alphas keep c-a-b off integers)") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> ai(1, 19), bi(1, 19), ci(2, 30), zi(1, 19);
    for (int t = 0; t < 200; ++t) {
        const double a = ai(rng) / 10.0, b = bi(rng) / 10.0, c = ci(rng) / 10.0;
        const double z = 0.5 + 0.475 * zi(rng) / 19.0;
        const double got = gauss_2f1(a, b, c, z);
        const double expect = series_oracle(a, b, c, z);
        CHECK(got == doctest::Approx(expect).epsilon(2e-10));
    }
}

TEST_CASE("Ferrari-kernel singular factorisation stays bounded as z -> 1") {
    // (1-z)^{1+alpha} 2F1((d+alpha)/2, 1+alpha/2; d/2; z) bounded, d=2, alpha=1
    Hyp2F1 f(1.5, 1.5, 1.0);
    const double K = f.singular_coefficient(); // Gamma(2)Gamma(1)/Gamma(1.5)^2 = 4/pi
    CHECK(K == doctest::Approx(4.0 / std::numbers::pi).epsilon(1e-12));
    for (double z : {0.9, 0.99, 0.999, 0.99999}) {
        const double compensated = std::pow(1.0 - z, 2.0) * f(z);
        CHECK(compensated > 0.5 * K);
        CHECK(compensated < 1.5 * K);
    }
}

TEST_CASE("cached evaluator equals the one-shot function") {
    Hyp2F1 f(2.25, 1.75, 1.5);
    for (double z : {0.1, 0.49, 0.51, 0.93})
        CHECK(f(z) == doctest::Approx(gauss_2f1(2.25, 1.75, 1.5, z)).epsilon(1e-14));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(gauss_2f1(1.0, 1.0, 0.0, 0.3), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(1.0, 1.0, -2.0, 0.3), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(1.0, 1.0, 2.0, -0.1), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(1.0, 1.0, 2.0, 1.0), std::domain_error);
}

TEST_CASE("terminating polynomial cases") {
    // a = -2: 2F1(-2,b;c;z) = 1 - 2bz/c + b(b+1)z^2/(c(c+1))
    const double b = 1.3, c = 2.1, z = 0.8;
    const double expect = 1.0 - 2.0 * b * z / c + b * (b + 1.0) * z * z / (c * (c + 1.0));
    CHECK(gauss_2f1(-2.0, b, c, z) == doctest::Approx(expect).epsilon(1e-13));
}
