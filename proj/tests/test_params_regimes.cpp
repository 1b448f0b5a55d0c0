#include <doctest.h>

#include <random>

#include "riesz_tf/params.hpp"
#include "riesz_tf/regime.hpp"

using namespace riesz_tf;

TEST_CASE("parameter admissibility") {
    CHECK_THROWS_AS(ProblemParams(1, 1.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(ProblemParams(2, 0.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(ProblemParams(2, 2.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(ProblemParams(3, 2.5, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(ProblemParams(2, 1.0, 0.9), std::invalid_argument);  // below 2d/(d+alpha)
    CHECK_THROWS_AS(ProblemParams(2, 1.9, 1.0000001), std::invalid_argument); // q ~ 1 guard
    CHECK_NOTHROW(ProblemParams(2, 1.0, 1.5));
    CHECK_NOTHROW(ProblemParams(5, 1.9, 1.5));
}

TEST_CASE("constants") {
    CHECK(riesz_constant(2, 1.0) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-14));
    CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-14));
    CHECK(sphere_area(2) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
    // kappa(2,1) = 1 via Gamma(1/2) = sqrt(pi)
    CHECK(beta_origin_value(2, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("threshold ordering q1 < q2 < q3 < 2 over random admissible (d, alpha)") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dd(2, 6);
    std::uniform_real_distribution<double> aa(0.05, 1.95);
    for (int t = 0; t < 300; ++t) {
        int d = dd(rng);
        double alpha = std::min(aa(rng), d - 0.05);
        ProblemParams p(d, alpha, 1.99);
        CHECK(p.q_admissible() < p.q_crit_low());
        CHECK(p.q_crit_low() < p.q_crit_high());
        CHECK(p.q_crit_high() < 2.0);
    }
}

TEST_CASE("regime map is a partition of the admissible q range") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> dd(2, 5);
    std::uniform_real_distribution<double> aa(0.2, 1.8);
    std::uniform_real_distribution<double> uu(0.0, 1.0);
    for (int t = 0; t < 300; ++t) {
        int d = dd(rng);
        double alpha = std::min(aa(rng), d - 0.1);
        double q1 = 2.0 * d / (d + alpha);
        double q = std::max(q1 + 1e-6, 1.0 + 2e-6) + uu(rng) * 2.0;
        ProblemParams p(d, alpha, q);
        RegimeSpec spec = classify_regime(p);
        // exactly one regime, with the table exponents
        switch (spec.regime) {
            case Regime::I:
                CHECK(q < p.q_crit_low());
                CHECK(spec.p == doctest::Approx((d - alpha) / (q - 1.0)));
                CHECK(spec.b == 0.0);
                break;
            case Regime::II:
                CHECK(std::abs(q - p.q_crit_low()) < 1e-9);
                CHECK(spec.p == doctest::Approx(double(d)));
                CHECK(spec.b == doctest::Approx(d / alpha));
                break;
            case Regime::III:
                CHECK(q > p.q_crit_low());
                CHECK(q < p.q_crit_high());
                CHECK(spec.p == doctest::Approx(alpha / (2.0 - q)));
                break;
            case Regime::IV:
                CHECK(std::abs(q - p.q_crit_high()) < 1e-9);
                CHECK(spec.p == doctest::Approx(d + alpha));
                CHECK(spec.b == doctest::Approx(-(d + alpha) / alpha));
                break;
            case Regime::V:
                CHECK(q > p.q_crit_high());
                CHECK(q < 2.0);
                CHECK(spec.p == doctest::Approx(d + alpha));
                CHECK(spec.b == 0.0);
                break;
            case Regime::Linear:
                CHECK(std::abs(q - 2.0) < 1e-9);
                CHECK(spec.p == doctest::Approx(d + alpha));
                break;
            case Regime::Superlinear:
                CHECK(q > 2.0);
                CHECK(spec.p == doctest::Approx(d + alpha));
                CHECK(spec.p_upper == doctest::Approx((d + alpha) / (q - 1.0)));
                break;
        }
    }
}

TEST_CASE("classification at the graphene-family points") {
    {
        RegimeSpec s = classify_regime(ProblemParams(2, 1.0, 1.4));
        CHECK(s.regime == Regime::I);
        CHECK(s.p == doctest::Approx(2.5));
        CHECK(s.b == 0.0);
    }
    {
        RegimeSpec s = classify_regime(ProblemParams(2, 1.0, 1.5));
        CHECK(s.regime == Regime::II);
        CHECK(s.p == doctest::Approx(2.0));
        CHECK(s.b == doctest::Approx(2.0));
        CHECK(s.two_sided); // the q=3/2 branch
    }
    {
        RegimeSpec s = classify_regime(ProblemParams(2, 1.0, 5.0 / 3.0));
        CHECK(s.regime == Regime::IV);
        CHECK(s.p == doctest::Approx(3.0));
        CHECK(s.b == doctest::Approx(-3.0)); // log factor in the numerator
    }
    {
        RegimeSpec s = classify_regime(ProblemParams(2, 1.0, 2.2));
        CHECK(s.regime == Regime::Superlinear);
        CHECK(s.p == doctest::Approx(3.0));
        CHECK(s.p_upper == doctest::Approx(2.5));
    }
    CHECK_THROWS_AS(ProblemParams(2, 1.0, 4.0 / 3.0), std::invalid_argument);
}

TEST_CASE("regime ii side-condition flags") {
    { // 1 < alpha < 2 and d > alpha+1: two-sided
        ProblemParams p(3, 1.2, (2.0 * 3 - 1.2) / 3);
        RegimeSpec s = classify_regime(p);
        CHECK(s.regime == Regime::II);
        CHECK(s.two_sided);
    }
    { // alpha < 1, d > alpha+1: only the upper bound survives
        ProblemParams p(2, 0.5, (2.0 * 2 - 0.5) / 2);
        RegimeSpec s = classify_regime(p);
        CHECK(s.regime == Regime::II);
        CHECK_FALSE(s.two_sided);
        CHECK(s.upper_bound_available);
        CHECK_FALSE(s.lower_bound_available);
        CHECK(!s.note.empty());
    }
    { // alpha in (1,2) but d <= alpha+1: only the lower bound survives
        ProblemParams p(2, 1.5, (2.0 * 2 - 1.5) / 2);
        RegimeSpec s = classify_regime(p);
        CHECK(s.regime == Regime::II);
        CHECK_FALSE(s.two_sided);
        CHECK_FALSE(s.upper_bound_available);
        CHECK(s.lower_bound_available);
    }
}
