#pragma once

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "riesz_tf/barriers.hpp"
#include "riesz_tf/kernel_matrix.hpp"
#include "riesz_tf/verify.hpp"

namespace riesz_tf {

using json = nlohmann::json;

// 17 significant digits: lossless double round trip in the CSV outputs.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline json to_json(const RegimeReport& r) {
    return json{{"regime", regime_name(r.regime)},
                {"p_expected", r.p_expected},
                {"b_expected", r.b_expected},
                {"p_fit", r.p_fit},
                {"b_fit", r.b_fit},
                {"p_upper_expected", r.p_upper_expected},
                {"fit_rms", r.fit_rms},
                {"method", r.method},
                {"upper_bound_only", r.upper_bound_only},
                {"conditional", r.conditional},
                {"pass", r.pass},
                {"skipped", r.skipped},
                {"reason", r.reason}};
}

inline json to_json(const MassReport& r) {
    return json{{"mass_signed", r.mass_signed},
                {"mass_abs", r.mass_abs},
                {"mass_abs_raw", r.mass_abs_raw},
                {"source_mass", r.source_mass},
                {"tail_correction", r.tail_correction},
                {"verdict", r.verdict},
                {"pass", r.pass},
                {"skipped", r.skipped},
                {"reason", r.reason}};
}

inline json to_json(const SharpLimitReport& r) {
    return json{{"fitted_amplitude", r.fitted_amplitude},
                {"predicted", r.predicted},
                {"rel_error", r.rel_error},
                {"degenerate", r.degenerate},
                {"pass", r.pass},
                {"skipped", r.skipped},
                {"reason", r.reason}};
}

inline json to_json(const OrderingReport& r) {
    return json{{"min_gap", r.min_gap},
                {"strict_fraction", r.strict_fraction},
                {"max_coincide_diff", r.max_coincide_diff},
                {"free_sign_changing", r.free_sign_changing},
                {"pass", r.pass},
                {"reason", r.reason}};
}

inline json to_json(const NewtonTailReport& r) {
    return json{{"preconditions_ok", r.preconditions_ok},
                {"message", r.message},
                {"mass", r.mass},
                {"predicted_coefficient", r.predicted_coefficient},
                {"worst_deviation", r.worst_deviation},
                {"pass", r.pass}};
}

inline json to_json(const BarrierReport& r) {
    return json{{"sign_ok", r.sign_ok},
                {"flatness", r.flatness},
                {"slope", r.slope},
                {"pass", r.pass},
                {"message", r.message}};
}

inline void write_density_csv(const std::string& path, const MinimizerResult& res,
                              const Potential& V) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << "r,rho,u,V\n";
    const auto& grid = res.rho.grid();
    for (std::size_t j = 0; j < grid.size(); ++j)
        out << fmt17(grid.node(j)) << ',' << fmt17(res.rho[j]) << ',' << fmt17(res.u[j])
            << ',' << fmt17(V.values[j]) << '\n';
}

inline void write_barrier_csv(const std::string& path, const BarrierReport& rep) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << "r,value,compensated\n";
    for (std::size_t i = 0; i < rep.radii.size(); ++i)
        out << fmt17(rep.radii[i]) << ',' << fmt17(rep.values[i]) << ','
            << fmt17(rep.compensated[i]) << '\n';
}

} // namespace riesz_tf
