#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "riesz_tf/params.hpp"

namespace riesz_tf {

enum class Regime { I, II, III, IV, V, Linear, Superlinear };

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::I: return "i";
        case Regime::II: return "ii";
        case Regime::III: return "iii";
        case Regime::IV: return "iv";
        case Regime::V: return "v";
        case Regime::Linear: return "linear";
        case Regime::Superlinear: return "superlinear";
    }
    return "?";
}

// Predicted tail behaviour rho ~ r^{-p} (log r)^{-b} of the minimizer for a
// fast-decaying superharmonic potential, by the q-interval. For the
// superlinear range only a two-sided power sandwich is known.
struct RegimeSpec {
    Regime regime = Regime::I;
    double p = 0.0; // tail power (lower-bound power when superlinear)
    double b = 0.0; // log power in the convention rho ~ r^{-p} (log r)^{-b}
    double p_upper = 0.0; // superlinear upper-bound power (d+alpha)/(q-1)
    double q1 = 0.0, q2 = 0.0, q3 = 0.0;
    // Two-sided estimates at the first critical value need side conditions;
    // otherwise one of the bounds survives.
    bool two_sided = true;
    bool upper_bound_available = true;
    bool lower_bound_available = true;
    std::string note;
};

inline RegimeSpec classify_regime(const ProblemParams& params) {
    const double d = params.d, alpha = params.alpha, q = params.q;
    RegimeSpec spec;
    spec.q1 = params.q_admissible();
    spec.q2 = params.q_crit_low();
    spec.q3 = params.q_crit_high();
    if (!(q > spec.q1))
        throw std::invalid_argument("classify_regime: q must exceed 2d/(d+alpha)");

    const double tol = 1e-9;
    if (std::abs(q - spec.q2) < tol) {
        spec.regime = Regime::II;
        spec.p = d;
        spec.b = d / alpha;
        const bool q_is_3_2 = std::abs(q - 1.5) < tol;
        spec.two_sided = q_is_3_2 || (alpha > 1.0 && alpha < 2.0 && d > alpha + 1.0);
        spec.upper_bound_available = q_is_3_2 || d > alpha + 1.0;
        spec.lower_bound_available = q_is_3_2 || alpha > 1.0;
        if (!spec.two_sided) {
            spec.note = "critical q=(2d-alpha)/d two-sided bound needs 1<alpha<2 and "
                        "d>alpha+1 (or q=3/2); ";
            spec.note += spec.upper_bound_available ? "upper bound available"
                                                    : "upper bound unavailable";
            spec.note += spec.lower_bound_available ? ", lower bound available"
                                                    : ", lower bound unavailable";
        }
    } else if (std::abs(q - spec.q3) < tol) {
        spec.regime = Regime::IV;
        spec.p = d + alpha;
        spec.b = -(d + alpha) / alpha; // log factor in the numerator
    } else if (q < spec.q2) {
        spec.regime = Regime::I;
        spec.p = (d - alpha) / (q - 1.0);
    } else if (q < spec.q3) {
        spec.regime = Regime::III;
        spec.p = alpha / (2.0 - q);
    } else if (q < 2.0 - tol) {
        spec.regime = Regime::V;
        spec.p = d + alpha;
    } else if (std::abs(q - 2.0) < tol) {
        spec.regime = Regime::Linear;
        spec.p = d + alpha;
    } else {
        spec.regime = Regime::Superlinear;
        spec.p = d + alpha;                    // lower bound
        spec.p_upper = (d + alpha) / (q - 1.0); // upper bound
        spec.note = "superlinear: only the sandwich r^{-(d+alpha)} <~ rho <~ "
                    "r^{-(d+alpha)/(q-1)} is asserted";
    }
    return spec;
}

} // namespace riesz_tf
