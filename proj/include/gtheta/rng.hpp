#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace gtheta {

/// splitmix64 finalizer; used to derive per-batch sub-seeds from (seed, index)
/// so trial batches can run independently yet deterministically.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seeded generator with the draw helpers the verifiers need.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(eng_);
    }

    /// log-uniform magnitude over [lo, hi], lo > 0
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    std::size_t index(std::size_t n) {
        std::uniform_int_distribution<std::size_t> d(0, n - 1);
        return d(eng_);
    }

    bool chance(double p) { return uniform(0.0, 1.0) < p; }

    /// Sampling domain for action-axiom trials: log-uniform over [1e-6, 1e6]
    /// plus the grid {0, 1, ..., 50}/10, mixed half and half. The grid hits
    /// exact zeros and small-integer corners that continuous draws never do.
    double magnitude() {
        if (chance(0.5)) {
            return 0.1 * static_cast<double>(index(51));
        }
        return log_uniform(1e-6, 1e6);
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

/// Default parameter grid for "for all t" checks: {2^j : -10 <= j <= 10}.
inline std::vector<double> default_t_grid() {
    std::vector<double> g;
    g.reserve(21);
    for (int j = -10; j <= 10; ++j) g.push_back(std::ldexp(1.0, j));
    return g;
}

}  // namespace gtheta
