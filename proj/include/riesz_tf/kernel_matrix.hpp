#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "riesz_tf/angular_kernel.hpp"
#include "riesz_tf/gauss.hpp"
#include "riesz_tf/parallel.hpp"
#include "riesz_tf/radial_function.hpp"

namespace riesz_tf {

// Discrete Riesz potential operator on a radial grid:
//   (G rho)(r_i) ~ (I_alpha * rho)(r_i) for node-sampled rho.
// Assembled as the symmetric bilinear form of the kernel against the hat
// basis with mass lumping,
//   M[i][j] = int int phi_i(s) s^{d-1} k(s,t) t^{d-1} phi_j(t) dt ds,
//   G[i][j] = sigma_{d-1} M[i][j] / w_i,
// which makes the weighted symmetry w_i G[i][j] = w_j G[j][i] exact and the
// quadratic form sum_i w_i rho_i (G rho)_i equal to the Riesz energy of the
// interpolated density.
class KernelMatrix {
  public:
    KernelMatrix(std::shared_ptr<const RadialGrid> grid, const ProblemParams& params)
        : grid_(std::move(grid)), params_(params), n_(grid_->size()), g_(n_ * n_, 0.0) {
        assemble();
    }

    const RadialGrid& grid() const { return *grid_; }
    std::shared_ptr<const RadialGrid> grid_ptr() const { return grid_; }
    const ProblemParams& params() const { return params_; }
    std::size_t size() const { return n_; }
    double entry(std::size_t i, std::size_t j) const { return g_[i * n_ + j]; }

    RadialFunction apply(const RadialFunction& rho) const {
        if (!rho.grid().same_as(*grid_))
            throw std::invalid_argument("KernelMatrix::apply: grid mismatch");
        std::vector<double> out(n_, 0.0);
        const auto& v = rho.values();
        for (std::size_t i = 0; i < n_; ++i) {
            const double* row = &g_[i * n_];
            double s = 0.0;
            for (std::size_t j = 0; j < n_; ++j)
                s += row[j] * v[j];
            if (!std::isfinite(s))
                throw std::runtime_error("KernelMatrix::apply: non-finite output");
            out[i] = s;
        }
        return RadialFunction(grid_, std::move(out));
    }

    // D_alpha(rho,rho) = sum_i w_i rho_i (G rho)_i; nonnegative.
    double interaction_energy(const RadialFunction& rho) const {
        RadialFunction grho = apply(rho);
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
            s += grid_->weight(i) * rho[i] * grho[i];
        return s;
    }

  private:
    struct Block {
        double v[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    };

    // Triangular part {t < s} of the diagonal cell pair [A,B]^2 in the
    // coordinates (s, u = s-t): the u-integrand carries the full diagonal
    // singularity u^{alpha-1} (log u at alpha=1), resolved by geometric
    // grading toward u=0 with a power-matched analytic sliver.
    Block diagonal_triangle(const AngularKernel& ker, double A, double B) const {
        const int d = params_.d;
        const double alpha = params_.alpha;
        const double len = B - A, inv = 1.0 / len;
        const GaussLegendre& gu = gl_rule(8);
        const GaussLegendre& gs = gl_rule(8);
        Block out;
        const int levels = 44;
        auto accumulate_u = [&](double u, double wu) {
            const double s_lo = A + u;
            const double mid = 0.5 * (s_lo + B), half = 0.5 * (B - s_lo);
            for (std::size_t h = 0; h < gs.x.size(); ++h) {
                const double s = mid + half * gs.x[h];
                const double t = s - u;
                const double kv = ker(s, t);
                const double base = wu * half * gs.w[h] * kv *
                                    std::pow(s, d - 1) * std::pow(t, d - 1);
                const double ls = (B - s) * inv, rs = (s - A) * inv;
                const double lt = (B - t) * inv, rt = (t - A) * inv;
                out.v[0][0] += base * ls * lt;
                out.v[0][1] += base * ls * rt;
                out.v[1][0] += base * rs * lt;
                out.v[1][1] += base * rs * rt;
            }
        };
        double hi = len;
        for (int k = 1; k <= levels; ++k) {
            double lo = len * std::ldexp(1.0, -k);
            const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            for (std::size_t g = 0; g < gu.x.size(); ++g)
                accumulate_u(mid + half * gu.x[g], half * gu.w[g]);
            hi = lo;
        }
        // sliver [0, w]: F(u) ~ F(w/2) (u/(w/2))^{alpha-1}
        {
            const double w = hi;
            Block probe;
            std::swap(probe, out);
            accumulate_u(0.5 * w, 1.0); // out now holds F(w/2) per combo
            const double scale = std::pow(0.5 * w, 1.0 - alpha) * std::pow(w, alpha) / alpha;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    probe.v[a][b] += out.v[a][b] * scale;
            out = probe;
        }
        return out;
    }

    // Adjacent cell pair [A,X] x [X,C]: near-singular corner at (X,X);
    // nested Gauss-Legendre with panels graded toward X from both sides.
    Block adjacent_pair(const AngularKernel& ker, double A, double X, double C) const {
        const int d = params_.d;
        const GaussLegendre& g6 = gl_rule(8);
        const int levels = 22;
        const double invL = 1.0 / (X - A), invR = 1.0 / (C - X);
        Block out;
        const double lenL = X - A;
        double hiL = lenL;
        for (int ks = 1; ks <= levels + 1; ++ks) {
            double loL = (ks <= levels) ? lenL * std::ldexp(1.0, -ks) : 0.0;
            const double midS = 0.5 * (X - hiL + X - loL), halfS = 0.5 * (hiL - loL);
            for (std::size_t a = 0; a < g6.x.size(); ++a) {
                const double s = midS + halfS * g6.x[a];
                const double ws = halfS * g6.w[a] * std::pow(s, d - 1);
                const double ls = (X - s) * invL, rs = (s - A) * invL;
                const double lenR = C - X;
                double hiR = lenR;
                for (int kt = 1; kt <= levels + 1; ++kt) {
                    double loR = (kt <= levels) ? lenR * std::ldexp(1.0, -kt) : 0.0;
                    const double midT = 0.5 * (X + loR + X + hiR), halfT = 0.5 * (hiR - loR);
                    for (std::size_t b = 0; b < g6.x.size(); ++b) {
                        const double t = midT + halfT * g6.x[b];
                        const double base = ws * halfT * g6.w[b] * ker(s, t) *
                                            std::pow(t, d - 1);
                        const double lt = (C - t) * invR, rt = (t - X) * invR;
                        out.v[0][0] += base * ls * lt;
                        out.v[0][1] += base * ls * rt;
                        out.v[1][0] += base * rs * lt;
                        out.v[1][1] += base * rs * rt;
                    }
                    hiR = loR;
                }
            }
            hiL = loL;
        }
        return out;
    }

    // Well-separated cell pair: plain tensor Gauss-Legendre.
    Block separated_pair(const AngularKernel& ker, double A, double B, double X, double C,
                         int order) const {
        const int d = params_.d;
        const GaussLegendre& g = gl_rule(order);
        const double invL = 1.0 / (B - A), invR = 1.0 / (C - X);
        const double midS = 0.5 * (A + B), halfS = 0.5 * (B - A);
        const double midT = 0.5 * (X + C), halfT = 0.5 * (C - X);
        Block out;
        for (std::size_t a = 0; a < g.x.size(); ++a) {
            const double s = midS + halfS * g.x[a];
            const double ws = halfS * g.w[a] * std::pow(s, d - 1);
            const double ls = (B - s) * invL, rs = (s - A) * invL;
            for (std::size_t b = 0; b < g.x.size(); ++b) {
                const double t = midT + halfT * g.x[b];
                const double base = ws * halfT * g.w[b] * ker(s, t) * std::pow(t, d - 1);
                const double lt = (C - t) * invR, rt = (t - X) * invR;
                out.v[0][0] += base * ls * lt;
                out.v[0][1] += base * ls * rt;
                out.v[1][0] += base * rs * lt;
                out.v[1][1] += base * rs * rt;
            }
        }
        return out;
    }

    void assemble() {
        const AngularKernel ker(params_);
        const std::size_t cells = n_ - 1;
        const auto& x = grid_->nodes();
        std::vector<double> m(n_ * n_, 0.0); // symmetric bilinear form
        auto add = [&](std::size_t i, std::size_t j, double v) { m[i * n_ + j] += v; };

        // two passes over outer cells (even, odd) so rows never race
        for (int parity = 0; parity < 2; ++parity) {
            std::vector<std::size_t> list;
            for (std::size_t ca = parity; ca < cells; ca += 2)
                list.push_back(ca);
            parallel_for(list.size(), [&](std::size_t idx) {
                const std::size_t ca = list[idx];
                const double A = x[ca], B = x[ca + 1];
                {
                    Block tri = diagonal_triangle(ker, A, B);
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b)
                            add(ca + a, ca + b, tri.v[a][b] + tri.v[b][a]);
                }
                for (std::size_t cb = ca + 1; cb < cells; ++cb) {
                    const double X = x[cb], C = x[cb + 1];
                    Block blk;
                    if (cb == ca + 1)
                        blk = adjacent_pair(ker, A, X, C);
                    else
                        blk = separated_pair(ker, A, B, X, C, cb - ca <= 3 ? 12 : 8);
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b) {
                            add(ca + a, cb + b, blk.v[a][b]);
                            add(cb + b, ca + a, blk.v[a][b]);
                        }
                }
            });
        }

        const double sigma = sphere_area(params_.d);
        for (std::size_t i = 0; i < n_; ++i) {
            const double scale = sigma / grid_->weight(i);
            for (std::size_t j = 0; j < n_; ++j) {
                const double v = scale * m[i * n_ + j];
                if (!std::isfinite(v))
                    throw std::runtime_error("assemble_kernel: non-finite entry at (" +
                                             std::to_string(i) + "," + std::to_string(j) + ")");
                g_[i * n_ + j] = v;
            }
        }
    }

    std::shared_ptr<const RadialGrid> grid_;
    ProblemParams params_;
    std::size_t n_;
    std::vector<double> g_;
};

inline KernelMatrix assemble_kernel(std::shared_ptr<const RadialGrid> grid,
                                    const ProblemParams& params) {
    return KernelMatrix(std::move(grid), params);
}

inline RadialFunction riesz_apply(const KernelMatrix& K, const RadialFunction& rho) {
    return K.apply(rho);
}

// Far-field audit against the Newton-type expansion
// (I_alpha * rho)(r) -> A_alpha ||rho||_1 r^{alpha-d} for integrable decaying rho.
struct NewtonTailReport {
    bool preconditions_ok = true;
    std::string message;
    double mass = 0.0;
    double predicted_coefficient = 0.0; // A_alpha * mass
    std::vector<double> radii;
    std::vector<double> ratio; // (G rho)(r) r^{d-alpha} / (A_alpha mass)
    double worst_deviation = 0.0;
    bool pass = false;
};

inline NewtonTailReport newton_tail_check(const RadialFunction& rho, const KernelMatrix& K,
                                          double tolerance = 0.02) {
    const RadialGrid& grid = K.grid();
    const ProblemParams& p = K.params();
    NewtonTailReport rep;
    rep.mass = rho.integrate();

    if (rho.min_value() < -1e-14 * rho.sup_norm()) {
        rep.preconditions_ok = false;
        rep.message = "rho must be nonnegative";
        return rep;
    }
    // r^d rho must die out on the tail
    double peak = 0.0, tail_peak = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double v = std::pow(grid.node(j), p.d) * std::abs(rho[j]);
        peak = std::max(peak, v);
        if (grid.node(j) >= 0.1 * grid.r_max())
            tail_peak = std::max(tail_peak, v);
    }
    if (peak > 0.0 && tail_peak > 0.1 * peak) {
        rep.preconditions_ok = false;
        rep.message = "r^d rho does not vanish on the tail";
        return rep;
    }

    rep.predicted_coefficient = riesz_constant(p.d, p.alpha) * rep.mass;
    RadialFunction grho = K.apply(rho);
    if (rep.predicted_coefficient == 0.0) {
        rep.pass = grho.sup_norm() <= 1e-12 * (1.0 + rho.sup_norm());
        rep.message = rep.pass ? "zero density: trivial pass" : "zero mass but nonzero field";
        return rep;
    }
    const double lo = grid.r_max() / 100.0, hi = grid.r_max() / 10.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double r = grid.node(j);
        if (r < lo || r > hi)
            continue;
        const double ratio = grho[j] * std::pow(r, p.d - p.alpha) / rep.predicted_coefficient;
        rep.radii.push_back(r);
        rep.ratio.push_back(ratio);
        rep.worst_deviation = std::max(rep.worst_deviation, std::abs(ratio - 1.0));
    }
    rep.pass = !rep.radii.empty() && rep.worst_deviation <= tolerance;
    return rep;
}

} // namespace riesz_tf
