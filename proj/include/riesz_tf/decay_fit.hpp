#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "riesz_tf/radial_function.hpp"

namespace riesz_tf {

enum class DecayModel { Power, PowerLog };

// Least-squares tail fit in log space:
//   Power:    log rho = log A - p log r
//   PowerLog: log rho = log A - p log r - b log log r
// so rho ~ A r^{-p} (log r)^{-b}.
struct DecayFit {
    double p = 0.0;
    double b = 0.0;
    double amplitude = 0.0;
    double r_lo = 0.0, r_hi = 0.0;
    double residual_rms = 0.0; // in log space
    DecayModel model = DecayModel::Power;
    int points = 0;
};

namespace detail_fit {

// solve the k x k normal equations by Gaussian elimination
inline void solve_normal(std::vector<double>& a, std::vector<double>& b, int k) {
    for (int c = 0; c < k; ++c) {
        int p = c;
        for (int i = c + 1; i < k; ++i)
            if (std::abs(a[i * k + c]) > std::abs(a[p * k + c]))
                p = i;
        if (a[p * k + c] == 0.0)
            throw std::runtime_error("fit_decay: singular normal equations");
        if (p != c) {
            for (int j = 0; j < k; ++j)
                std::swap(a[c * k + j], a[p * k + j]);
            std::swap(b[c], b[p]);
        }
        for (int i = c + 1; i < k; ++i) {
            const double f = a[i * k + c] / a[c * k + c];
            for (int j = c; j < k; ++j)
                a[i * k + j] -= f * a[c * k + j];
            b[i] -= f * b[c];
        }
    }
    for (int c = k; c-- > 0;) {
        for (int j = c + 1; j < k; ++j)
            b[c] -= a[c * k + j] * b[j];
        b[c] /= a[c * k + c];
    }
}

} // namespace detail_fit

inline DecayFit fit_decay_samples(const std::vector<double>& radii,
                                  const std::vector<double>& values, double r_lo,
                                  double r_hi, DecayModel model) {
    if (!(r_lo > 1.0) || !(r_hi > r_lo))
        throw std::invalid_argument("fit_decay: window must satisfy 1 < r_lo < r_hi");
    std::vector<double> lx, ly, llx;
    for (std::size_t j = 0; j < radii.size(); ++j) {
        const double r = radii[j];
        if (r < r_lo || r > r_hi)
            continue;
        if (!(values[j] > 0.0))
            throw std::domain_error(
                "fit_decay: nonpositive sample in the window at r=" + std::to_string(r) +
                "; pass |rho| or shrink the window");
        lx.push_back(std::log(r));
        llx.push_back(std::log(std::log(r)));
        ly.push_back(std::log(values[j]));
    }
    const int npt = int(lx.size());
    if (npt < (model == DecayModel::Power ? 3 : 4))
        throw std::invalid_argument("fit_decay: too few samples in the window");

    const int k = model == DecayModel::Power ? 2 : 3;
    std::vector<double> a(k * k, 0.0), b(k, 0.0);
    for (int i = 0; i < npt; ++i) {
        const double row[3] = {1.0, lx[i], llx[i]};
        for (int c = 0; c < k; ++c) {
            for (int cc = 0; cc < k; ++cc)
                a[c * k + cc] += row[c] * row[cc];
            b[c] += row[c] * ly[i];
        }
    }
    detail_fit::solve_normal(a, b, k);

    DecayFit fit;
    fit.model = model;
    fit.amplitude = std::exp(b[0]);
    fit.p = -b[1];
    fit.b = model == DecayModel::PowerLog ? -b[2] : 0.0;
    fit.r_lo = r_lo;
    fit.r_hi = r_hi;
    fit.points = npt;
    double ss = 0.0;
    for (int i = 0; i < npt; ++i) {
        double pred = b[0] + (model == DecayModel::Power ? b[1] * lx[i]
                                                         : b[1] * lx[i] + b[2] * llx[i]);
        ss += (ly[i] - pred) * (ly[i] - pred);
    }
    fit.residual_rms = std::sqrt(ss / npt);
    return fit;
}

// Default window [r_max/10^3, r_max/10]: the lower end clears the core
// crossover, the upper end keeps a decade of buffer against the truncated
// exterior interaction.
inline DecayFit fit_decay(const RadialFunction& rho, double r_lo, double r_hi,
                          DecayModel model) {
    const double rmax = rho.grid().r_max();
    if (!(r_lo >= rmax * 1e-3 - 1e-12) || !(r_hi <= rmax * 0.1 + 1e-12))
        throw std::invalid_argument("fit_decay: window must lie in [r_max/1e3, r_max/10]");
    return fit_decay_samples(rho.grid().nodes(), rho.values(), r_lo, r_hi, model);
}

inline DecayFit fit_decay(const RadialFunction& rho, DecayModel model) {
    const double rmax = rho.grid().r_max();
    return fit_decay(rho, rmax * 1e-3, rmax * 0.1, model);
}

} // namespace riesz_tf
