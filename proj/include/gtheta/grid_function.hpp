#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace gtheta {

/// Values of a function on the uniform grid t_i = i/n over [0,1].
/// The element type of the sup-metric space used by the fractional solver.
class GridFunction {
public:
    explicit GridFunction(std::size_t segments)
        : n_(segments), values_(segments + 1, 0.0) {
        if (segments < 1) throw std::invalid_argument("GridFunction: need at least one segment");
    }

    static GridFunction from_values(std::vector<double> values) {
        if (values.size() < 2) throw std::invalid_argument("GridFunction: need at least two nodes");
        GridFunction f(values.size() - 1);
        f.values_ = std::move(values);
        return f;
    }

    std::size_t segments() const { return n_; }
    std::size_t nodes() const { return n_ + 1; }
    double spacing() const { return 1.0 / static_cast<double>(n_); }
    double node(std::size_t i) const { return static_cast<double>(i) / static_cast<double>(n_); }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    std::span<const double> values() const { return values_; }

    /// piecewise-linear interpolant, t in [0,1]
    double value_at(double t) const {
        if (t <= 0.0) return values_.front();
        if (t >= 1.0) return values_.back();
        double x = t * static_cast<double>(n_);
        auto i = static_cast<std::size_t>(x);
        if (i >= n_) i = n_ - 1;
        double w = x - static_cast<double>(i);
        return values_[i] * (1.0 - w) + values_[i + 1] * w;
    }

    double sup_diff(const GridFunction& other) const {
        if (other.n_ != n_) throw std::invalid_argument("GridFunction: grid size mismatch");
        double m = 0.0;
        for (std::size_t i = 0; i <= n_; ++i) m = std::max(m, std::abs(values_[i] - other.values_[i]));
        return m;
    }

    bool operator==(const GridFunction& other) const {
        return n_ == other.n_ && values_ == other.values_;
    }

private:
    std::size_t n_;
    std::vector<double> values_;
};

}  // namespace gtheta
