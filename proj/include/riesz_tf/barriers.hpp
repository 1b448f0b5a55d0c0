#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "riesz_tf/ferrari.hpp"
#include "riesz_tf/params.hpp"

namespace riesz_tf {

enum class BarrierFamily { GBeta, Log, LogLift, Power };

// Closed-form radial barrier: tail formula for r >= 1, even quartic C^2
// patch a0 + a2 r^2 + a4 r^4 on [0,1] (gbeta needs no patch). Positive and
// radially nonincreasing; the expected tail sign and rate of its fractional
// Laplacian come from the source asymptotics:
//   gbeta(beta), d-alpha<beta<d : -, p = beta+alpha
//   log(b), b>=1               : -, p = d, log power b+1
//   loglift                    : -, p = d+alpha, (log r)^{(d+alpha)/alpha} numerator
//   power(gamma):
//     0<gamma<d-alpha : +, p = gamma+alpha
//     d-alpha<gamma<d : -, p = gamma+alpha
//     gamma = d       : -, p = d+alpha, log r numerator
//     gamma > d       : -, p = d+alpha
struct Barrier {
    BarrierFamily family;
    double param = 0.0; // beta, b, or gamma; unused for loglift
    int d = 2;
    double alpha = 1.0;
    double log_shift = 1.0; // log(e^{c0} r) = c0 + log r in the log-type tails

    bool patched = false;     // tail formula replaced by the quartic on [0,1]
    double a0 = 0.0, a2 = 0.0, a4 = 0.0;

    int expected_sign = -1;   // sign of (-Delta)^{alpha/2} barrier on the far tail
    double p_exp = 0.0;       // |FL| ~ r^{-p_exp} (log r)^{log_exp}
    double log_exp = 0.0;     // signed log exponent of the envelope

    double value(double r) const {
        if (patched && r < 1.0) {
            const double r2 = r * r;
            return a0 + a2 * r2 + a4 * r2 * r2;
        }
        return tail_value(r);
    }
    double d1(double r) const {
        if (patched && r < 1.0)
            return 2.0 * a2 * r + 4.0 * a4 * r * r * r;
        return tail_d1(r);
    }
    double d2(double r) const {
        if (patched && r < 1.0)
            return 2.0 * a2 + 12.0 * a4 * r * r;
        return tail_d2(r);
    }

    RadialProfile profile() const {
        return {[*this](double r) { return value(r); },
                [*this](double r) { return d1(r); },
                [*this](double r) { return d2(r); }};
    }

    // Envelope the fractional Laplacian is compared against on the tail.
    double envelope(double r) const {
        return std::pow(r, -p_exp) * std::pow(std::log(r), log_exp);
    }

    // tail formulas; m and b reused per family
    double tail_value(double r) const {
        switch (family) {
            case BarrierFamily::GBeta:
                return std::pow(1.0 + r * r, -0.5 * param);
            case BarrierFamily::Log:
                return std::pow(r, -(d - alpha)) * std::pow(log_shift + std::log(r), -param);
            case BarrierFamily::LogLift:
                return std::pow(r, -double(d)) *
                       std::pow(log_shift + std::log(r), double(d) / alpha);
            case BarrierFamily::Power:
                return std::pow(r, -param);
        }
        return 0.0;
    }
    double tail_d1(double r) const {
        switch (family) {
            case BarrierFamily::GBeta:
                return -param * r * std::pow(1.0 + r * r, -0.5 * param - 1.0);
            case BarrierFamily::Log: {
                const double L = log_shift + std::log(r), m = d - alpha;
                return -std::pow(r, -m - 1.0) * std::pow(L, -param) * (m + param / L);
            }
            case BarrierFamily::LogLift: {
                const double L = log_shift + std::log(r), e = double(d) / alpha;
                return -std::pow(r, -double(d) - 1.0) * std::pow(L, e) * (d - e / L);
            }
            case BarrierFamily::Power:
                return -param * std::pow(r, -param - 1.0);
        }
        return 0.0;
    }
    double tail_d2(double r) const {
        switch (family) {
            case BarrierFamily::GBeta:
                return -param * std::pow(1.0 + r * r, -0.5 * param - 1.0) +
                       param * (param + 2.0) * r * r * std::pow(1.0 + r * r, -0.5 * param - 2.0);
            case BarrierFamily::Log: {
                // U = r^-m L^-b, L = log_shift + log r
                const double L = log_shift + std::log(r), m = d - alpha, b = param;
                return std::pow(r, -m - 2.0) * std::pow(L, -b) *
                       (m * (m + 1.0) + b * (2.0 * m + 1.0) / L + b * (b + 1.0) / (L * L));
            }
            case BarrierFamily::LogLift: {
                // U = r^-d L^e, e = d/alpha
                const double L = log_shift + std::log(r), e = double(d) / alpha, dd = d;
                return std::pow(r, -dd - 2.0) * std::pow(L, e) *
                       (dd * (dd + 1.0) - e * (2.0 * dd + 1.0) / L + e * (e - 1.0) / (L * L));
            }
            case BarrierFamily::Power:
                return param * (param + 1.0) * std::pow(r, -param - 2.0);
        }
        return 0.0;
    }
};

inline Barrier make_barrier(BarrierFamily family, double parameter,
                            const ProblemParams& params) {
    Barrier b;
    b.family = family;
    b.param = parameter;
    b.d = params.d;
    b.alpha = params.alpha;
    const double d = params.d, alpha = params.alpha;

    switch (family) {
        case BarrierFamily::GBeta:
            if (!(parameter > d - alpha) || !(parameter < d))
                throw std::invalid_argument(
                    "make_barrier: gbeta requires d-alpha < beta < d for the tail estimate");
            b.patched = false;
            b.expected_sign = -1;
            b.p_exp = parameter + alpha;
            b.log_exp = 0.0;
            break;
        case BarrierFamily::Log:
            if (!(parameter >= 1.0))
                throw std::invalid_argument("make_barrier: log barrier requires b >= 1");
            b.patched = true;
            b.expected_sign = -1;
            b.p_exp = d;
            b.log_exp = -(parameter + 1.0);
            break;
        case BarrierFamily::LogLift:
            b.patched = true;
            b.expected_sign = -1;
            b.p_exp = d + alpha;
            b.log_exp = (d + alpha) / alpha;
            break;
        case BarrierFamily::Power:
            if (!(parameter > 0.0))
                throw std::invalid_argument("make_barrier: power barrier requires gamma > 0");
            if (std::abs(parameter - (d - alpha)) < 1e-9)
                throw std::invalid_argument(
                    "make_barrier: power barrier requires gamma != d-alpha");
            b.patched = true;
            if (parameter < d - alpha) {
                b.expected_sign = +1;
                b.p_exp = parameter + alpha;
                b.log_exp = 0.0;
            } else if (parameter < d && std::abs(parameter - d) > 1e-9) {
                b.expected_sign = -1;
                b.p_exp = parameter + alpha;
                b.log_exp = 0.0;
            } else if (std::abs(parameter - d) < 1e-9) {
                b.expected_sign = -1;
                b.p_exp = d + alpha;
                b.log_exp = 1.0;
            } else {
                b.expected_sign = -1;
                b.p_exp = d + alpha;
                b.log_exp = 0.0;
            }
            break;
    }

    if (b.patched) {
        // Match value and two derivatives of the tail formula at r=1. For the
        // log-type tails with alpha <= 1 the seam derivative at the natural
        // constant log(e r) is not <= 0, so no C^2 monotone patch exists; a
        // larger constant log(e^{c0} r) restores monotonicity and leaves the
        // asymptotics untouched.
        bool ok = false;
        for (int c0 = 1; c0 <= 4 && !ok; ++c0) {
            b.log_shift = c0;
            const double f = b.tail_value(1.0), f1 = b.tail_d1(1.0), f2 = b.tail_d2(1.0);
            b.a4 = 0.125 * (f2 - f1);
            b.a2 = 0.25 * (3.0 * f1 - f2);
            b.a0 = f - b.a2 - b.a4;
            // monotone and positive on [0,1]: U'(r) = 2r(a2 + 2 a4 r^2)
            ok = b.a2 <= 1e-12 && b.a2 + 2.0 * b.a4 <= 1e-12 && b.a0 > 0.0;
            if (family == BarrierFamily::Power || family == BarrierFamily::GBeta)
                break; // no log constant to adjust
        }
        if (!ok)
            throw std::invalid_argument(
                "make_barrier: no positive radially nonincreasing C^2 patch for these "
                "parameters");
    }
    for (int i = 0; i <= 64; ++i) { // dense monotonicity sample across the seam
        const double r = 2.0 * i / 64.0 + 1e-9;
        if (b.d1(r) > 1e-10 * std::abs(b.value(r)) || !(b.value(r) > 0.0))
            throw std::invalid_argument("make_barrier: barrier not positive nonincreasing");
    }
    return b;
}

struct BarrierReport {
    std::vector<double> radii;
    std::vector<double> values;      // fractional Laplacian samples
    std::vector<double> compensated; // |value| / envelope
    bool sign_ok = false;
    double flatness = 0.0;           // max/min of compensated over the window
    double slope = 0.0;              // log-log slope of compensated
    bool pass = false;
    std::string message;
};

// Checks sign, two-sided flatness (the "~" of the source estimates) and
// near-zero compensated slope of the fractional Laplacian over a log window.
inline BarrierReport verify_barrier(const FerrariEvaluator& eval, const Barrier& barrier,
                                    double r_lo = 1e2, double r_hi = 1e4,
                                    int points = 20, double flatness_bound = 3.0,
                                    double slope_bound = 0.1) {
    if (!(r_lo >= 1e2) || !(r_hi <= 1e5) || !(r_lo < r_hi))
        throw std::invalid_argument("verify_barrier: window must lie in [1e2, 1e5]");
    BarrierReport rep;
    RadialProfile u = barrier.profile();
    rep.sign_ok = true;
    double cmin = std::numeric_limits<double>::max(), cmax = 0.0;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < points; ++i) {
        const double r = r_lo * std::pow(r_hi / r_lo, double(i) / (points - 1));
        const double v = eval(u, r);
        if (!std::isfinite(v)) {
            rep.message = "quadrature failure at r=" + std::to_string(r);
            return rep;
        }
        rep.radii.push_back(r);
        rep.values.push_back(v);
        if (v * barrier.expected_sign <= 0.0)
            rep.sign_ok = false;
        const double c = std::abs(v) / barrier.envelope(r);
        rep.compensated.push_back(c);
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
        const double lx = std::log(r), ly = std::log(c);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    rep.flatness = cmax / cmin;
    const double n = points;
    rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.pass = rep.sign_ok && rep.flatness <= flatness_bound &&
               std::abs(rep.slope) <= slope_bound;
    if (!rep.pass)
        rep.message = std::string(rep.sign_ok ? "" : "sign mismatch; ") +
                      "flatness=" + std::to_string(rep.flatness) +
                      " slope=" + std::to_string(rep.slope);
    return rep;
}

} // namespace riesz_tf
