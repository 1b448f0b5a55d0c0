#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace riesz_tf {

// Gauss-Legendre rule on [-1,1], nodes by Newton iteration on P_n.
struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;

    explicit GaussLegendre(int n) : x(n), w(n) {
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double p1 = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, pm = 0.0;
                for (int k = 0; k < n; ++k) {
                    double pk = ((2.0 * k + 1.0) * t * p0 - k * pm) / (k + 1.0);
                    pm = p0;
                    p0 = pk;
                }
                p1 = n * (t * p0 - pm) / (t * t - 1.0); // P_n'(t)
                double dt = p0 / p1;
                t -= dt;
                if (std::abs(dt) < 1e-15)
                    break;
            }
            x[i] = -t;
            x[n - 1 - i] = t;
            w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * p1 * p1);
        }
    }
};

// Shared fixed-order rules; orders used across the library.
inline const GaussLegendre& gl_rule(int n) {
    static const GaussLegendre g4(4), g8(8), g12(12), g16(16), g20(20), g24(24), g32(32);
    switch (n) {
        case 4: return g4;
        case 8: return g8;
        case 12: return g12;
        case 16: return g16;
        case 20: return g20;
        case 24: return g24;
        default: return g32;
    }
}

// Integral of f over [a,b] with an n-point Gauss-Legendre rule.
template <class F>
double gl_integrate(F&& f, double a, double b, int n = 16) {
    const GaussLegendre& g = gl_rule(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i)
        s += g.w[i] * f(mid + half * g.x[i]);
    return s * half;
}

// Composite rule on geometrically graded panels accumulating at `edge`
// (one endpoint of [a,b]). Handles integrable endpoint singularities
// |x-edge|^{alpha-1} and log|x-edge|; the remaining sliver of relative
// width 2^{-levels} is dropped by the caller or completed analytically.
template <class F>
double gl_graded(F&& f, double a, double b, double edge, int levels, int n = 8) {
    double s = 0.0;
    if (edge == b) {
        double len = b - a;
        double left = a;
        for (int k = 1; k <= levels; ++k) {
            double right = b - len * std::ldexp(1.0, -k);
            s += gl_integrate(f, left, right, n);
            left = right;
        }
    } else { // edge == a
        double len = b - a;
        double right = b;
        for (int k = 1; k <= levels; ++k) {
            double left = a + len * std::ldexp(1.0, -k);
            s += gl_integrate(f, left, right, n);
            right = left;
        }
    }
    return s;
}

} // namespace riesz_tf
