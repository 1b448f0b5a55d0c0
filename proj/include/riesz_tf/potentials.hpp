#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "riesz_tf/kernel_matrix.hpp"
#include "riesz_tf/radial_function.hpp"

namespace riesz_tf {

enum class PotentialKind { ClosedForm, SourceDefined, Direct };

// External potential, optionally carrying the source f with
// (-Delta)^{alpha/2} V = f and its grid mass.
struct Potential {
    RadialFunction values;
    std::optional<RadialFunction> source;
    double source_mass = 0.0; // ||f||_{L^1}, grid quadrature
    PotentialKind kind = PotentialKind::Direct;

    bool has_source() const { return source.has_value(); }
};

// V_Z(r) = Z A_alpha (1+r^2)^{-(d-alpha)/2}, the explicit superharmonic
// family. Its source is exactly f = Z (A_alpha/kappa) (1+r^2)^{-(d+alpha)/2}
// with total mass Z (the far field A_alpha Z r^{alpha-d} matches the
// Newton expansion A_alpha ||f||_1 r^{alpha-d}).
inline Potential potential_vz(double Z, const ProblemParams& params,
                              std::shared_ptr<const RadialGrid> grid) {
    if (!(Z > 0.0))
        throw std::invalid_argument("potential_vz: Z must be positive");
    const double A = riesz_constant(params.d, params.alpha);
    const double kappa = beta_origin_value(params.d, params.alpha);
    const double mexp = 0.5 * (params.d - params.alpha);
    const double sexp = 0.5 * (params.d + params.alpha);
    Potential pot{
        RadialFunction::sample(grid, [&](double r) { return Z * A * std::pow(1.0 + r * r, -mexp); }),
        RadialFunction::sample(grid,
                               [&](double r) { return Z * (A / kappa) * std::pow(1.0 + r * r, -sexp); }),
        0.0, PotentialKind::ClosedForm};
    pot.source_mass = pot.source->integrate_abs();
    return pot;
}

// V = I_alpha * f for a given integrable source profile.
inline Potential potential_from_source(const RadialFunction& f, const KernelMatrix& K) {
    Potential pot{K.apply(f), f, 0.0, PotentialKind::SourceDefined};
    pot.source_mass = f.integrate_abs();
    return pot;
}

// Compactly supported C^2 bump height (1-(r/R0)^2)^3; radially decreasing,
// no source metadata (its fractional Laplacian changes sign).
inline Potential bump_potential(double height, double radius,
                                std::shared_ptr<const RadialGrid> grid) {
    if (!(height > 0.0) || !(radius > 0.0))
        throw std::invalid_argument("bump_potential: height and radius must be positive");
    auto bump = [=](double r) {
        if (r >= radius)
            return 0.0;
        const double t = 1.0 - (r / radius) * (r / radius);
        return height * t * t * t;
    };
    return Potential{RadialFunction::sample(grid, bump), std::nullopt, 0.0,
                     PotentialKind::Direct};
}

// CSV profile with columns r,V[,f]; linear interpolation onto the grid.
inline Potential potential_from_csv(const std::string& path,
                                    std::shared_ptr<const RadialGrid> grid) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("potential_from_csv: cannot open " + path);
    std::vector<double> rs, vs, fs;
    std::string line;
    bool has_f = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        for (char& c : line)
            if (c == ',' || c == ';')
                c = ' ';
        std::istringstream ss(line);
        double r, v, f;
        if (!(ss >> r >> v))
            continue; // header or malformed line
        rs.push_back(r);
        vs.push_back(v);
        if (ss >> f) {
            fs.push_back(f);
            has_f = true;
        } else {
            fs.push_back(0.0);
        }
    }
    if (rs.size() < 2)
        throw std::invalid_argument("potential_from_csv: need at least two samples");
    for (std::size_t i = 1; i < rs.size(); ++i)
        if (!(rs[i] > rs[i - 1]))
            throw std::invalid_argument("potential_from_csv: radii must increase");
    auto interp = [&](const std::vector<double>& ys, double r) {
        if (r <= rs.front())
            return ys.front();
        if (r >= rs.back())
            return 0.0;
        auto it = std::upper_bound(rs.begin(), rs.end(), r);
        std::size_t i = std::size_t(it - rs.begin());
        double t = (r - rs[i - 1]) / (rs[i] - rs[i - 1]);
        return (1.0 - t) * ys[i - 1] + t * ys[i];
    };
    Potential pot{RadialFunction::sample(grid, [&](double r) { return interp(vs, r); }),
                  std::nullopt, 0.0, PotentialKind::Direct};
    if (has_f) {
        pot.source = RadialFunction::sample(grid, [&](double r) { return interp(fs, r); });
        pot.source_mass = pot.source->integrate_abs();
        pot.kind = PotentialKind::SourceDefined;
    }
    return pot;
}

} // namespace riesz_tf
