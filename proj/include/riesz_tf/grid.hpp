#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "riesz_tf/params.hpp"

namespace riesz_tf {

// Graded radial mesh: uniform cells on [0,1], geometric cells on [1, r_max].
struct GridLayout {
    int inner_nodes = 64;      // cells on [0,1]
    int nodes_per_decade = 32; // geometric cells per decade on [1, r_max]
    double r_max = 1e4;

    static GridLayout solver_default() { return {64, 32, 1e4}; }
    static GridLayout tail_default() { return {64, 32, 1e5}; }
};

// Radial quadrature grid with weights w_j = sigma_{d-1} int phi_j(r) r^{d-1} dr
// for the piecewise-linear hat basis phi_j, so that sum_j w_j f_j integrates
// the piecewise-linear interpolant of f over R^d exactly.
class RadialGrid {
  public:
    RadialGrid(int d, const GridLayout& layout) : d_(d), layout_(layout) {
        if (layout.r_max < 10.0)
            throw std::invalid_argument("RadialGrid: r_max must be >= 10");
        if (layout.inner_nodes < 8)
            throw std::invalid_argument("RadialGrid: inner node count must be >= 8");
        if (layout.nodes_per_decade < 8)
            throw std::invalid_argument("RadialGrid: nodes per decade must be >= 8");
        if (d < 2)
            throw std::invalid_argument("RadialGrid: d must be >= 2");

        const int ni = layout.inner_nodes;
        nodes_.reserve(ni + 8);
        for (int j = 0; j <= ni; ++j)
            nodes_.push_back(double(j) / ni);
        const double decades = std::log10(layout.r_max);
        const int no = std::max(1, int(std::lround(layout.nodes_per_decade * decades)));
        for (int k = 1; k <= no; ++k)
            nodes_.push_back(std::pow(10.0, decades * k / no));
        nodes_.back() = layout.r_max;

        build_weights();
    }

    int dim() const { return d_; }
    const GridLayout& layout() const { return layout_; }
    std::size_t size() const { return nodes_.size(); } // N+1 nodes
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    double node(std::size_t j) const { return nodes_[j]; }
    double weight(std::size_t j) const { return weights_[j]; }
    double r_max() const { return nodes_.back(); }

    // Index of the cell [r_c, r_{c+1}] containing r (clamped).
    std::size_t cell_of(double r) const {
        if (r <= 0.0)
            return 0;
        if (r >= nodes_.back())
            return nodes_.size() - 2;
        auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
        return std::size_t(it - nodes_.begin()) - 1;
    }

    bool same_as(const RadialGrid& other) const {
        return d_ == other.d_ && nodes_ == other.nodes_;
    }

  private:
    // Exact moments int_a^b r^{d-1} (alpha0 + alpha1 r) dr for the hat pieces.
    void build_weights() {
        const double sigma = sphere_area(d_);
        const std::size_t n = nodes_.size();
        weights_.assign(n, 0.0);
        for (std::size_t c = 0; c + 1 < n; ++c) {
            const double a = nodes_[c], b = nodes_[c + 1], h = b - a;
            const double m_d = (std::pow(b, d_) - std::pow(a, d_)) / d_;
            const double m_d1 = (std::pow(b, d_ + 1) - std::pow(a, d_ + 1)) / (d_ + 1);
            // left hat on this cell: (b - r)/h; right hat: (r - a)/h
            weights_[c] += sigma * (b * m_d - m_d1) / h;
            weights_[c + 1] += sigma * (m_d1 - a * m_d) / h;
        }
    }

    int d_;
    GridLayout layout_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

inline std::shared_ptr<const RadialGrid> build_grid(const ProblemParams& params,
                                                    const GridLayout& layout) {
    return std::make_shared<const RadialGrid>(params.d, layout);
}

} // namespace riesz_tf
