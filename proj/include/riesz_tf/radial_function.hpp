#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "riesz_tf/grid.hpp"

namespace riesz_tf {

// Node-sampled radial profile; piecewise linear between nodes, zero beyond
// r_max. Immutable once built.
class RadialFunction {
  public:
    RadialFunction(std::shared_ptr<const RadialGrid> grid, std::vector<double> values)
        : grid_(std::move(grid)), values_(std::move(values)) {
        if (!grid_ || values_.size() != grid_->size())
            throw std::invalid_argument("RadialFunction: value/node count mismatch");
        for (double v : values_)
            if (!std::isfinite(v))
                throw std::invalid_argument("RadialFunction: non-finite node value");
    }

    static RadialFunction zero(std::shared_ptr<const RadialGrid> grid) {
        std::vector<double> v(grid->size(), 0.0);
        return RadialFunction(std::move(grid), std::move(v));
    }

    template <class F>
    static RadialFunction sample(std::shared_ptr<const RadialGrid> grid, F&& f) {
        std::vector<double> v(grid->size());
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] = f(grid->node(j));
        return RadialFunction(std::move(grid), std::move(v));
    }

    const RadialGrid& grid() const { return *grid_; }
    std::shared_ptr<const RadialGrid> grid_ptr() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t j) const { return values_[j]; }
    std::size_t size() const { return values_.size(); }

    double eval(double r) const {
        const auto& x = grid_->nodes();
        if (r <= 0.0)
            return values_.front();
        if (r >= x.back())
            return r > x.back() ? 0.0 : values_.back();
        std::size_t c = grid_->cell_of(r);
        double t = (r - x[c]) / (x[c + 1] - x[c]);
        return (1.0 - t) * values_[c] + t * values_[c + 1];
    }

    // Grid quadrature of the profile over R^d (signed), and of its modulus.
    double integrate() const {
        double s = 0.0;
        for (std::size_t j = 0; j < values_.size(); ++j)
            s += grid_->weight(j) * values_[j];
        return s;
    }
    double integrate_abs() const {
        double s = 0.0;
        for (std::size_t j = 0; j < values_.size(); ++j)
            s += grid_->weight(j) * std::abs(values_[j]);
        return s;
    }

    double sup_norm() const {
        double m = 0.0;
        for (double v : values_)
            m = std::max(m, std::abs(v));
        return m;
    }
    double min_value() const { return *std::min_element(values_.begin(), values_.end()); }
    double max_value() const { return *std::max_element(values_.begin(), values_.end()); }

  private:
    std::shared_ptr<const RadialGrid> grid_;
    std::vector<double> values_;
};

} // namespace riesz_tf
