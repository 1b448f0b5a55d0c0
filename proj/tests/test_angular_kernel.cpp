#include <doctest.h>

#include <random>

#include "riesz_tf/angular_kernel.hpp"

using namespace riesz_tf;

namespace {
// brute-force spherical quadrature of A_alpha int_{S^{d-1}} |r e1 - s w|^{alpha-d}
// for d=3: high-order composite Gauss-Legendre in the polar angle times 2 pi
double brute_force_s2(double r, double s, double alpha) {
    const double A = riesz_constant(3, alpha);
    const GaussLegendre& g = gl_rule(32);
    const int panels = 400;
    double sum = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double a = std::numbers::pi * k / panels, b = std::numbers::pi * (k + 1) / panels;
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            const double t = 0.5 * (a + b) + 0.5 * (b - a) * g.x[i];
            const double q2 = r * r + s * s - 2.0 * r * s * std::cos(t);
            sum += 0.5 * (b - a) * g.w[i] * std::pow(q2, 0.5 * (alpha - 3.0)) * std::sin(t);
        }
    }
    return A * 2.0 * std::numbers::pi * sum;
}
} // namespace

TEST_CASE("kernel at the axis: r=1, s=0, d=2, alpha=1 gives exactly 1") {
    ProblemParams p(2, 1.0, 1.5);
    CHECK(riesz_angular_kernel(1.0, 0.0, p) == doctest::Approx(1.0).epsilon(1e-13));
    // symmetry under swapping the radii
    CHECK(riesz_angular_kernel(0.0, 1.0, p) ==
          doctest::Approx(riesz_angular_kernel(1.0, 0.0, p)).epsilon(1e-13));
}

TEST_CASE("kernel singular at the origin pair") {
    ProblemParams p(2, 1.0, 1.5);
    CHECK_THROWS_AS(riesz_angular_kernel(0.0, 0.0, p), std::domain_error);
}

TEST_CASE("d=3 brute-force oracle at r=2, s=1, alpha=1.5") {
    ProblemParams p(3, 1.5, 1.9);
    const double oracle = brute_force_s2(2.0, 1.0, 1.5);
    CHECK(riesz_angular_kernel(2.0, 1.0, p) == doctest::Approx(oracle).epsilon(1e-8));
    AngularKernel fast(p);
    CHECK(fast(2.0, 1.0) == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("closed hypergeometric form agrees with the adaptive quadrature") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> xi(0.0, 0.9999);
    for (auto [d, alpha] : {std::pair{2, 1.0}, {2, 0.5}, {2, 1.5}, {3, 0.5}, {3, 1.5},
                            {4, 0.7}, {5, 1.3}}) {
        ProblemParams p(d, alpha, 1.95);
        AngularKernel fast(p);
        for (int t = 0; t < 12; ++t) {
            const double r = 2.3, s = r * xi(rng);
            const double direct = riesz_angular_kernel(r, s, p);
            CHECK(direct == doctest::Approx(fast(r, s)).epsilon(1e-8));
        }
    }
}

TEST_CASE("homogeneity of degree alpha - d") {
    ProblemParams p(3, 0.8, 1.9);
    AngularKernel k(p);
    for (double lam : {0.25, 3.0, 40.0})
        CHECK(k(lam * 1.7, lam * 0.9) ==
              doctest::Approx(std::pow(lam, 0.8 - 3.0) * k(1.7, 0.9)).epsilon(1e-12));
}
