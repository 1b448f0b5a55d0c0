#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace riesz_tf {

// Problem parameters for the Thomas-Fermi energy with Riesz interaction:
// dimension d >= 2, interaction order alpha in (0, min(2,d)), kinetic
// exponent q > 2d/(d+alpha).
struct ProblemParams {
    int d = 2;
    double alpha = 1.0;
    double q = 1.5;

    ProblemParams(int d_, double alpha_, double q_) : d(d_), alpha(alpha_), q(q_) {
        validate();
    }

    void validate() const {
        if (d < 2)
            throw std::invalid_argument("ProblemParams: dimension d must be >= 2");
        if (!(alpha > 0.0) || !(alpha < 2.0) || !(alpha < double(d)))
            throw std::invalid_argument("ProblemParams: alpha must lie in (0, min(2,d))");
        if (!(q > q_admissible()))
            throw std::invalid_argument(
                "ProblemParams: admissibility requires q > 2d/(d+alpha) = " +
                std::to_string(q_admissible()));
        // 1/(q-1) overflows as q -> 1+; reject even when 2d/(d+alpha) < 1 + 1e-6.
        if (q <= 1.0 + 1e-6)
            throw std::invalid_argument("ProblemParams: q <= 1 + 1e-6 is not supported");
    }

    // Hardy-Littlewood-Sobolev critical exponent 2d/(d+alpha).
    double q_admissible() const { return 2.0 * d / (d + alpha); }
    // First critical value (2d-alpha)/d: slowest decay, log correction.
    double q_crit_low() const { return (2.0 * d - alpha) / d; }
    // Second critical value (2d+alpha)/(d+alpha): fastest sublinear decay.
    double q_crit_high() const { return (2.0 * d + alpha) / (d + alpha); }

    double conjugate_exponent() const { return q / (q - 1.0); }
};

// Surface measure of the unit sphere S^{n-1} in R^n.
inline double sphere_area(int n) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

// Volume of the unit ball in R^d.
inline double unit_ball_volume(int d) { return sphere_area(d) / d; }

// Riesz normalisation A_alpha = Gamma((d-alpha)/2) / (Gamma(alpha/2) pi^{d/2} 2^alpha),
// making the kernel A_alpha |x|^{alpha-d} the inverse of (-Delta)^{alpha/2}.
inline double riesz_constant(int d, double alpha) {
    return std::exp(std::lgamma(0.5 * (d - alpha)) - std::lgamma(0.5 * alpha) -
                    0.5 * d * std::log(std::numbers::pi) - alpha * std::numbers::ln2);
}

// kappa(d,alpha) = Gamma((d-alpha)/2) / (2^alpha Gamma((d+alpha)/2)):
// the value at the origin of I_alpha applied to (1+|x|^2)^{-(d+alpha)/2}.
// Equivalently A_alpha sigma_{d-1} (1/2) B(alpha/2, d/2).
inline double beta_origin_value(int d, double alpha) {
    return std::exp(std::lgamma(0.5 * (d - alpha)) - alpha * std::numbers::ln2 -
                    std::lgamma(0.5 * (d + alpha)));
}

} // namespace riesz_tf
