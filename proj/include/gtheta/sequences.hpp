#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gtheta/rng.hpp"
#include "gtheta/space.hpp"

namespace gtheta {

/// A sequence given by its generator, evaluated on indices [0, horizon].
struct SequenceSpec {
    std::function<Point(long long)> generator;
    long long horizon = 0;
    std::string description;
};

enum class CheckVerdict { pass, fail, indeterminate };

inline const char* to_cstring(CheckVerdict v) {
    switch (v) {
        case CheckVerdict::pass: return "pass";
        case CheckVerdict::fail: return "fail";
        default: return "indeterminate";
    }
}

/// Plateau detection over the last 10% of a trace: settled when the window
/// spread is below 1e-9 * (1 + |mean|).
struct TailStats {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    bool settled = false;
};

inline TailStats tail_stats(const std::vector<double>& values) {
    TailStats s;
    if (values.empty()) return s;
    std::size_t window = std::max<std::size_t>(1, values.size() / 10);
    std::size_t start = values.size() - window;
    double sum = 0.0;
    s.min = values[start];
    s.max = values[start];
    for (std::size_t i = start; i < values.size(); ++i) {
        sum += values[i];
        s.min = std::min(s.min, values[i]);
        s.max = std::max(s.max, values[i]);
    }
    s.mean = sum / static_cast<double>(window);
    s.settled = (s.max - s.min) < 1e-9 * (1.0 + std::abs(s.mean));
    return s;
}

struct ConvergencePerT {
    double t = 0.0;
    std::optional<long long> tail_index;  // minimal N with distance < eps beyond it
    double max_tail_distance = 0.0;       // over [N, horizon], or the window when N is absent
    TailStats window;
};

struct ConvergenceReport {
    CheckVerdict verdict = CheckVerdict::indeterminate;
    std::vector<ConvergencePerT> per_t;
    std::string notes;
};

/// Convergence to a supplied limit: for each grid t there must be N with
/// distance(s_i, limit, t) < eps for all i in [N, horizon]. A settled tail
/// at or above eps refutes; an unsettled one leaves the verdict open.
inline ConvergenceReport check_convergence(const GThetaSpace& space, const SequenceSpec& seq,
                                           const Point& limit,
                                           const std::vector<double>& t_grid, double eps) {
    if (!(eps > 0.0)) throw std::domain_error("check_convergence: eps must be positive");
    if (seq.horizon < 1) throw std::domain_error("check_convergence: horizon must be >= 1");
    ConvergenceReport report;
    report.notes = "\"for all p > 0\" evaluated on the recorded t-grid";
    bool any_refuted = false;
    bool any_open = false;
    for (double t : t_grid) {
        std::vector<double> d(static_cast<std::size_t>(seq.horizon) + 1);
        for (long long i = 0; i <= seq.horizon; ++i) {
            d[static_cast<std::size_t>(i)] = eval_metric(space, seq.generator(i), limit, t);
        }
        ConvergencePerT row;
        row.t = t;
        row.window = tail_stats(d);
        long long first_bad = -1;  // largest index with d >= eps
        for (long long i = seq.horizon; i >= 0; --i) {
            if (d[static_cast<std::size_t>(i)] >= eps) { first_bad = i; break; }
        }
        if (first_bad == seq.horizon) {
            row.max_tail_distance = row.window.max;
            if (row.window.settled) any_refuted = true;
            else any_open = true;
        } else {
            row.tail_index = first_bad + 1;
            double m = 0.0;
            for (long long i = first_bad + 1; i <= seq.horizon; ++i) {
                m = std::max(m, d[static_cast<std::size_t>(i)]);
            }
            row.max_tail_distance = m;
        }
        report.per_t.push_back(std::move(row));
    }
    if (any_refuted) report.verdict = CheckVerdict::fail;
    else if (any_open) report.verdict = CheckVerdict::indeterminate;
    else report.verdict = CheckVerdict::pass;
    return report;
}

struct CauchyReport {
    CheckVerdict verdict = CheckVerdict::indeterminate;
    double best_pair_max = 0.0;  // smallest M(N) over the candidate ladder
    std::string notes;
};

/// Cauchy check over sampled index pairs: pass when some cutoff N makes all
/// sampled pair distances beyond N fall under eps, on every grid t.
/// Exhaustive for horizons up to 2000, subsampled deterministically above.
inline CauchyReport check_cauchy(const GThetaSpace& space, const SequenceSpec& seq,
                                 const std::vector<double>& t_grid, double eps,
                                 std::uint64_t seed = 0) {
    if (!(eps > 0.0)) throw std::domain_error("check_cauchy: eps must be positive");
    if (seq.horizon < 1) throw std::domain_error("check_cauchy: horizon must be >= 1");
    std::vector<std::pair<long long, long long>> pairs;
    long long h = seq.horizon;
    if (h <= 2000) {
        for (long long i = 0; i <= h; ++i) {
            for (long long j = i + 1; j <= h; ++j) pairs.emplace_back(i, j);
        }
    } else {
        long long w = h - 200;
        for (long long i = w; i <= h; ++i) {
            for (long long j = i + 1; j <= h; ++j) pairs.emplace_back(i, j);
        }
        for (long long i = 0; i <= h; i += std::max<long long>(1, h / 256)) {
            for (long long k = 1; i + k <= h; k *= 2) pairs.emplace_back(i, i + k);
        }
        Rng rng(split_seed(seed, 41));
        for (int i = 0; i < 500; ++i) {
            auto a = static_cast<long long>(rng.index(static_cast<std::size_t>(h + 1)));
            auto b = static_cast<long long>(rng.index(static_cast<std::size_t>(h + 1)));
            if (a != b) pairs.emplace_back(std::min(a, b), std::max(a, b));
        }
    }

    CauchyReport report;
    report.notes = h <= 2000 ? "pairs enumerated exhaustively"
                             : "pairs subsampled (tail window exhaustive, strides, seeded draws)";
    std::vector<long long> cutoffs = {0, h / 8, h / 4, h / 2, (3 * h) / 4, (9 * h) / 10};
    bool all_t_pass = true;
    bool any_flat_refutation = false;
    bool any_open = false;
    double best_overall = 0.0;
    for (double t : t_grid) {
        std::vector<double> m(cutoffs.size(), 0.0);
        for (const auto& [i, j] : pairs) {
            double d = eval_metric(space, seq.generator(i), seq.generator(j), t);
            for (std::size_t c = 0; c < cutoffs.size(); ++c) {
                if (i >= cutoffs[c]) m[c] = std::max(m[c], d);
            }
        }
        double best = *std::min_element(m.begin(), m.end());
        best_overall = std::max(best_overall, best);
        if (best < eps) continue;
        all_t_pass = false;
        double spread = *std::max_element(m.begin(), m.end()) - best;
        if (spread < 1e-9 * (1.0 + best)) any_flat_refutation = true;
        else any_open = true;
    }
    report.best_pair_max = best_overall;
    (void)any_open;
    if (all_t_pass) report.verdict = CheckVerdict::pass;
    else if (any_flat_refutation) report.verdict = CheckVerdict::fail;
    else report.verdict = CheckVerdict::indeterminate;
    return report;
}

struct UniqueLimitReport {
    CheckVerdict verdict = CheckVerdict::pass;  // pass = consistent with uniqueness
    ConvergenceReport first;
    ConvergenceReport second;
};

/// Limits are unique; two distinct supplied limits must not both pass the
/// convergence check. Both passing would numerically falsify that, so the
/// full traces are returned for inspection.
inline UniqueLimitReport check_unique_limit(const GThetaSpace& space, const SequenceSpec& seq,
                                            const Point& limit1, const Point& limit2,
                                            const std::vector<double>& t_grid, double eps) {
    if (limit1 == limit2) {
        throw std::invalid_argument("check_unique_limit: limits must be distinct");
    }
    UniqueLimitReport report;
    report.first = check_convergence(space, seq, limit1, t_grid, eps);
    report.second = check_convergence(space, seq, limit2, t_grid, eps);
    bool both = report.first.verdict == CheckVerdict::pass &&
                report.second.verdict == CheckVerdict::pass;
    report.verdict = both ? CheckVerdict::fail : CheckVerdict::pass;
    return report;
}

struct ContinuityPerT {
    double t = 0.0;
    double tail_value = 0.0;   // plateau of distance(s_i, probe, t)
    double point_value = 0.0;  // distance(limit, probe, t)
    bool settled = false;
};

struct SeqContinuityReport {
    CheckVerdict verdict = CheckVerdict::indeterminate;  // pass = determinate answer
    bool continuous = false;
    std::vector<ContinuityPerT> per_t;
    std::string notes;
};

/// Compares lim_i distance(s_i, probe, t) (tail plateau) against
/// distance(limit, probe, t). Requires the sequence to converge to the
/// supplied limit first.
inline SeqContinuityReport check_sequential_continuity(const GThetaSpace& space,
                                                       const SequenceSpec& seq,
                                                       const Point& limit, const Point& probe,
                                                       const std::vector<double>& t_grid,
                                                       double eps = 1e-9) {
    SeqContinuityReport report;
    ConvergenceReport conv = check_convergence(space, seq, limit, t_grid, eps);
    if (conv.verdict != CheckVerdict::pass) {
        report.notes = "sequence did not certify convergence to the supplied limit";
        return report;
    }
    bool all_settled = true;
    bool all_match = true;
    for (double t : t_grid) {
        std::vector<double> d(static_cast<std::size_t>(seq.horizon) + 1);
        for (long long i = 0; i <= seq.horizon; ++i) {
            d[static_cast<std::size_t>(i)] = eval_metric(space, seq.generator(i), probe, t);
        }
        ContinuityPerT row;
        row.t = t;
        TailStats stats = tail_stats(d);
        row.tail_value = stats.mean;
        row.point_value = eval_metric(space, limit, probe, t);
        // a tail certified below eps counts as settled at ~0 even while
        // still decaying (the probe-at-the-limit case)
        row.settled = stats.settled || stats.max < eps;
        if (!row.settled) all_settled = false;
        double tol = std::max(eps, 1e-7 * (1.0 + std::abs(row.point_value)));
        if (std::abs(row.tail_value - row.point_value) > tol) all_match = false;
        report.per_t.push_back(row);
    }
    if (!all_settled) {
        report.notes = "tail not settled within the horizon";
        return report;
    }
    report.verdict = CheckVerdict::pass;
    report.continuous = all_match;
    return report;
}

/// Catalog sequences, addressable by name from the CLI.
inline SequenceSpec seq_half_inverse(long long horizon) {
    return {[](long long i) { return Point(Rational(1, 2 * (i + 1))); }, horizon,
            "s_i = 1/(2(i+1))"};
}

inline SequenceSpec seq_constant(const Point& value, long long horizon) {
    return {[value](long long) { return value; }, horizon, "constant " + value.to_string()};
}

inline SequenceSpec seq_alternating01(long long horizon) {
    return {[](long long i) { return Point(static_cast<long long>(i % 2)); }, horizon,
            "0, 1, 0, 1, ..."};
}

}  // namespace gtheta
