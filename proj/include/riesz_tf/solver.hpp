#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "riesz_tf/kernel_matrix.hpp"
#include "riesz_tf/potentials.hpp"

namespace riesz_tf {

enum class ConstraintMode { Free, Nonnegative };
enum class InitialGuess { Zero, ThomasFermiLocal };

struct SolveOptions {
    double damping = 0.5;      // theta in (0,1]
    int max_iterations = 20000;
    double tolerance = 1e-10;  // EL residual, relative to sup|V| scale
    ConstraintMode mode = ConstraintMode::Free;
    InitialGuess initial = InitialGuess::ThomasFermiLocal;

    void validate() const {
        if (!(damping > 0.0) || damping > 1.0)
            throw std::invalid_argument("SolveOptions: damping must lie in (0,1]");
        if (!(tolerance > 0.0))
            throw std::invalid_argument("SolveOptions: tolerance must be positive");
        if (max_iterations < 1)
            throw std::invalid_argument("SolveOptions: max_iterations must be >= 1");
    }
};

struct MinimizerResult {
    RadialFunction rho;
    RadialFunction u; // V - I_alpha * rho
    double energy = 0.0;
    double residual = 0.0; // sup-node EL residual (absolute)
    double residual_scale = 1.0;
    double tolerance_abs = 0.0; // requested tolerance * scale
    int iterations = 0;
    bool converged = false;
    double mass_signed = 0.0;
    double mass_abs = 0.0;
    std::string diagnostics;
    std::vector<double> energy_trace;   // accepted-step energies
    std::vector<double> residual_trace; // residual before each accepted step
};

// Discrete Thomas-Fermi energy
//   E(rho) = sum_j w_j (|rho_j|^q / q - V_j rho_j) + 1/2 sum_j w_j rho_j (G rho)_j.
inline double energy(const RadialFunction& rho, const Potential& V, const KernelMatrix& K,
                     const ProblemParams& params) {
    if (!rho.grid().same_as(K.grid()) || !V.values.grid().same_as(K.grid()))
        throw std::invalid_argument("energy: grid mismatch");
    const auto& w = K.grid().weights();
    RadialFunction grho = K.apply(rho);
    double e = 0.0;
    for (std::size_t j = 0; j < rho.size(); ++j)
        e += w[j] * (std::pow(std::abs(rho[j]), params.q) / params.q - V.values[j] * rho[j] +
                     0.5 * rho[j] * grho[j]);
    if (!std::isfinite(e))
        throw std::runtime_error("energy: non-finite value");
    return e;
}

namespace detail_solver {

inline double el_update(double w, double inv_qm1, ConstraintMode mode) {
    if (mode == ConstraintMode::Nonnegative)
        return w > 0.0 ? std::pow(w, inv_qm1) : 0.0;
    return w > 0.0 ? std::pow(w, inv_qm1) : -std::pow(-w, inv_qm1);
}

// Dense LU with partial pivoting; a is row-major n x n, overwritten.
inline bool lu_solve(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
    std::vector<std::size_t> piv(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(a[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a[i * n + k]) > best) {
                best = std::abs(a[i * n + k]);
                p = i;
            }
        if (best == 0.0)
            return false;
        piv[k] = p;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a[k * n + j], a[p * n + j]);
            std::swap(b[k], b[p]);
        }
        const double inv = 1.0 / a[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a[i * n + k] * inv;
            if (f == 0.0)
                continue;
            a[i * n + k] = f;
            for (std::size_t j = k + 1; j < n; ++j)
                a[i * n + j] -= f * a[k * n + j];
            b[i] -= f * b[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < n; ++j)
            s -= a[k * n + j] * b[j];
        b[k] = s / a[k * n + k];
    }
    return true;
}

} // namespace detail_solver

// Node-wise Euler-Lagrange residual of the converged relation:
//   free:        sign(rho)|rho|^{q-1} - (V - G rho)
//   nonnegative: rho - [V - G rho]_+^{1/(q-1)}
inline RadialFunction el_residual(const RadialFunction& rho, const Potential& V,
                                  const KernelMatrix& K, const ProblemParams& params,
                                  ConstraintMode mode) {
    if (!rho.grid().same_as(K.grid()))
        throw std::invalid_argument("el_residual: grid mismatch");
    RadialFunction grho = K.apply(rho);
    std::vector<double> res(rho.size());
    const double inv_qm1 = 1.0 / (params.q - 1.0);
    for (std::size_t j = 0; j < rho.size(); ++j) {
        const double w = V.values[j] - grho[j];
        if (mode == ConstraintMode::Free) {
            const double lhs =
                rho[j] >= 0.0 ? std::pow(rho[j], params.q - 1.0) : -std::pow(-rho[j], params.q - 1.0);
            res[j] = lhs - w;
        } else {
            res[j] = rho[j] - detail_solver::el_update(w, inv_qm1, mode);
        }
    }
    return RadialFunction(rho.grid_ptr(), std::move(res));
}

inline RadialFunction el_to_u(const RadialFunction& rho, const Potential& V,
                              const KernelMatrix& K) {
    RadialFunction grho = K.apply(rho);
    std::vector<double> u(rho.size());
    for (std::size_t j = 0; j < rho.size(); ++j)
        u[j] = V.values[j] - grho[j];
    return RadialFunction(rho.grid_ptr(), std::move(u));
}

// Damped fixed point on the pointwise Euler-Lagrange map
//   rho <- (1-theta) rho + theta T(V - G rho),
// T(w) = sign(w)|w|^{1/(q-1)} (free) or [w]_+^{1/(q-1)} (nonnegative), with an
// energy-guarded step: a step that increases the energy is retried with theta
// halved; theta under 1e-4 is reported as divergence, never silently.
inline MinimizerResult solve_constrained(const Potential& V, const KernelMatrix& K,
                                         const ProblemParams& params, SolveOptions opts) {
    opts.validate();
    if (!V.values.grid().same_as(K.grid()))
        throw std::invalid_argument("solve: potential grid mismatch");
    auto grid = K.grid_ptr();
    const std::size_t n = grid->size();
    const double inv_qm1 = 1.0 / (params.q - 1.0);
    const double supV = V.values.sup_norm();
    // residual scale per the converged-relation units
    const double scale = opts.mode == ConstraintMode::Free
                             ? std::max(supV, 1e-300)
                             : std::max(std::pow(supV, inv_qm1), 1e-300);

    std::vector<double> rho(n, 0.0);
    if (opts.initial == InitialGuess::ThomasFermiLocal) {
        // local guess T(V), cut at the screening radius where the Newton field
        // of the enclosed guess mass would already exceed V; beyond that the
        // dropped interaction term dominates and T(V) badly overshoots
        const double A = riesz_constant(params.d, params.alpha);
        double enclosed = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            rho[j] = detail_solver::el_update(V.values[j], inv_qm1, opts.mode);
            enclosed += K.grid().weight(j) * std::abs(rho[j]);
            const double r = K.grid().node(j);
            if (r > 0.0 &&
                A * enclosed * std::pow(r, params.alpha - params.d) > std::abs(V.values[j])) {
                for (std::size_t k = j; k < n; ++k)
                    rho[k] = 0.0;
                break;
            }
        }
    }

    RadialFunction cur(grid, rho);
    double cur_energy = energy(cur, V, K, params);
    double residual = 0.0;
    int it = 0;
    bool converged = false;
    bool restarted = false;
    std::string diag;
    const double guard_slack = 1e-13;
    MinimizerResult out{cur, cur, 0.0, 0.0, scale, opts.tolerance * scale, 0, false,
                        0.0, 0.0, "", {}, {}};

    auto el_residual_sup = [&](const RadialFunction& state, const RadialFunction& grho,
                               std::vector<double>& target) {
        double res_sup = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double w = V.values[j] - grho[j];
            target[j] = detail_solver::el_update(w, inv_qm1, opts.mode);
            double res;
            if (opts.mode == ConstraintMode::Free) {
                const double lhs = state[j] >= 0.0 ? std::pow(state[j], params.q - 1.0)
                                                   : -std::pow(-state[j], params.q - 1.0);
                res = std::abs(lhs - w);
            } else {
                res = std::abs(state[j] - target[j]);
            }
            res_sup = std::max(res_sup, res);
        }
        return res_sup;
    };

    // Phase 1: the damped Euler-Lagrange fixed point. It contracts well in
    // the core but closes Newton-order mass deficits in the far tail only
    // slowly (badly so for q >= 2), so it runs on a sub-budget and hands a
    // good iterate to the Newton phase.
    const int fp_budget = std::min(opts.max_iterations, 600);
    std::vector<double> target(n);
    for (; it < fp_budget; ) {
        ++it;
        RadialFunction grho = K.apply(cur);
        residual = el_residual_sup(cur, grho, target);
        if (residual <= opts.tolerance * scale) {
            converged = true;
            break;
        }

        bool accepted = false;
        double theta = opts.damping; // halved within the step on energy increase
        while (theta >= 1e-4) {
            std::vector<double> next(n);
            for (std::size_t j = 0; j < n; ++j)
                next[j] = (1.0 - theta) * cur[j] + theta * target[j];
            RadialFunction cand(grid, std::move(next));
            const double cand_energy = energy(cand, V, K, params);
            if (cand_energy <= cur_energy + guard_slack * (1.0 + std::abs(cur_energy))) {
                cur = std::move(cand);
                cur_energy = cand_energy;
                accepted = true;
                out.energy_trace.push_back(cur_energy);
                out.residual_trace.push_back(residual);
                break;
            }
            theta *= 0.5;
        }
        if (!accepted) {
            // the local guess can start outside the descent basin for q near 2
            // and above; one restart from zero is attempted before moving on
            if (!restarted && opts.initial == InitialGuess::ThomasFermiLocal) {
                restarted = true;
                cur = RadialFunction::zero(grid);
                cur_energy = energy(cur, V, K, params);
                diag = "thomas-fermi-local guess rejected by the energy guard; "
                       "restarted from zero; ";
                continue;
            }
            break; // hand over to the Newton phase
        }
    }

    // Phase 2: energy-guarded Newton on the Euler-Lagrange system
    //   free:        sign(rho)|rho|^{q-1} + G rho - V = 0,
    //   nonnegative: rho - [V - G rho]_+^{1/(q-1)} = 0,
    // which resolves the global tail/mass coupling the pointwise map cannot.
    if (!converged) {
        const int newton_budget = 80;
        const double rho_floor =
            std::pow(std::max(opts.tolerance * scale, 1e-290), inv_qm1) * 1e-2;
        for (int ni = 0; ni < newton_budget && it < opts.max_iterations; ++ni) {
            ++it;
            RadialFunction grho = K.apply(cur);
            residual = el_residual_sup(cur, grho, target);
            if (residual <= opts.tolerance * scale) {
                converged = true;
                break;
            }
            std::vector<double> J(n * n);
            std::vector<double> rhs(n);
            if (opts.mode == ConstraintMode::Free) {
                for (std::size_t j = 0; j < n; ++j) {
                    for (std::size_t k = 0; k < n; ++k)
                        J[j * n + k] = K.entry(j, k);
                    const double aj = std::max(std::abs(cur[j]), rho_floor);
                    const double sp =
                        std::min(1e280, (params.q - 1.0) * std::pow(aj, params.q - 2.0));
                    J[j * n + j] += sp;
                    const double lhs = cur[j] >= 0.0 ? std::pow(cur[j], params.q - 1.0)
                                                     : -std::pow(-cur[j], params.q - 1.0);
                    rhs[j] = -(lhs + grho[j] - V.values[j]);
                }
            } else {
                for (std::size_t j = 0; j < n; ++j) {
                    const double w = V.values[j] - grho[j];
                    double c = 0.0;
                    if (w > 0.0)
                        c = std::min(1e280,
                                     inv_qm1 * std::pow(std::max(w, opts.tolerance * scale * 1e-2),
                                                        inv_qm1 - 1.0));
                    for (std::size_t k = 0; k < n; ++k)
                        J[j * n + k] = c * K.entry(j, k);
                    J[j * n + j] += 1.0;
                    rhs[j] = -(cur[j] - detail_solver::el_update(w, inv_qm1, opts.mode));
                }
            }
            if (!detail_solver::lu_solve(J, rhs, n)) {
                diag += "newton: singular jacobian at iteration " + std::to_string(it);
                break;
            }
            double t = 1.0;
            bool accepted = false;
            while (t >= std::ldexp(1.0, -30)) {
                std::vector<double> next(n);
                for (std::size_t j = 0; j < n; ++j)
                    next[j] = cur[j] + t * rhs[j];
                RadialFunction cand(grid, std::move(next));
                const double cand_energy = energy(cand, V, K, params);
                if (cand_energy <= cur_energy + guard_slack * (1.0 + std::abs(cur_energy))) {
                    cur = std::move(cand);
                    cur_energy = cand_energy;
                    accepted = true;
                    out.energy_trace.push_back(cur_energy);
                    out.residual_trace.push_back(residual);
                    break;
                }
                t *= 0.5;
            }
            if (!accepted) {
                diag += "newton: energy guard rejected the step at iteration " +
                        std::to_string(it);
                break;
            }
        }
        if (!converged) { // final residual of the last iterate
            RadialFunction grho = K.apply(cur);
            residual = el_residual_sup(cur, grho, target);
            converged = residual <= opts.tolerance * scale;
        }
    }

    out.rho = cur;
    out.u = el_to_u(cur, V, K);
    out.energy = cur_energy;
    out.residual = residual;
    out.iterations = it;
    out.converged = converged;
    out.mass_signed = cur.integrate();
    out.mass_abs = cur.integrate_abs();
    out.diagnostics = diag;
    if (!converged && out.diagnostics.empty())
        out.diagnostics = "iteration budget exhausted with residual " + std::to_string(residual);
    return out;
}

inline MinimizerResult solve_free(const Potential& V, const KernelMatrix& K,
                                  const ProblemParams& params, SolveOptions opts = {}) {
    opts.mode = ConstraintMode::Free;
    return solve_constrained(V, K, params, opts);
}

inline MinimizerResult solve_nonneg(const Potential& V, const KernelMatrix& K,
                                    const ProblemParams& params, SolveOptions opts = {}) {
    opts.mode = ConstraintMode::Nonnegative;
    return solve_constrained(V, K, params, opts);
}

} // namespace riesz_tf
