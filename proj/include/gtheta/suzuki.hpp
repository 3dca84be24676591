#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gtheta/rng.hpp"
#include "gtheta/space.hpp"

namespace gtheta {

/// Piecewise threshold function from the classical premise-gated contraction
/// theorem, mapping [0,1) into (1/2, 1].
inline double psi(double u) {
    if (!(u >= 0.0) || u >= 1.0) throw std::domain_error("psi: u must lie in [0, 1)");
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (u <= golden) return 1.0;
    if (u <= inv_sqrt2) return (1.0 - u) / (u * u);
    return 1.0 / (u + 1.0);
}

/// Carrier-closed self map.
struct SelfMap {
    std::string name;
    std::function<Point(const Point&)> apply;
};

/// max of the four contraction comparison terms; the averaged term divides
/// by 2 arithmetically regardless of the space's action, as specified.
inline double m_value(const GThetaSpace& space, const SelfMap& map, const Point& x,
                      const Point& y, double t) {
    Point tx = map.apply(x);
    Point ty = map.apply(y);
    double d_xy = eval_metric(space, x, y, t);
    double d_xtx = eval_metric(space, x, tx, t);
    double d_yty = eval_metric(space, y, ty, t);
    double avg = 0.5 * (eval_metric(space, x, ty, t) + eval_metric(space, y, tx, t));
    return std::max(std::max(d_xy, d_xtx), std::max(d_yty, avg));
}

enum class SuzukiVariant { general, banach, kannan };
enum class PremiseForm { x_Tx, x_Ty };

inline const char* to_cstring(SuzukiVariant v) {
    switch (v) {
        case SuzukiVariant::general: return "general";
        case SuzukiVariant::banach: return "banach";
        default: return "kannan";
    }
}

struct SuzukiConfig {
    double u = 0.0;  // contraction coefficient in [0, 1)
    SuzukiVariant variant = SuzukiVariant::general;
    PremiseForm premise_form = PremiseForm::x_Tx;  // the proof's form; x_Ty is the literal one
    std::vector<double> t_grid = default_t_grid();
    long long pair_samples = 1000;
    std::uint64_t seed = 0;
};

struct SuzukiViolation {
    Point x, y;
    double s = 0.0;
    double lhs = 0.0;  // distance(Tx, Ty, s)
    double rhs = 0.0;  // the variant bound
};

struct SuzukiReport {
    bool holds = true;
    long long implications_checked = 0;
    long long vacuous = 0;  // premise-false samples
    std::optional<SuzukiViolation> violation;
    std::string notes;
};

/// Checks the premise-gated contraction implication over ordered pairs and
/// the t-grid: exhaustive when the carrier is finite, sampled otherwise.
inline SuzukiReport verify_suzuki(const GThetaSpace& space, const SelfMap& map,
                                  const SuzukiConfig& config) {
    if (!(config.u >= 0.0) || config.u >= 1.0) {
        throw std::domain_error("verify_suzuki: u must lie in [0, 1)");
    }
    if (config.pair_samples < 1) {
        throw std::domain_error("verify_suzuki: pair_samples must be >= 1");
    }
    SuzukiReport report;
    double threshold = psi(config.u);

    auto check_pair = [&](const Point& x, const Point& y) {
        Point tx = map.apply(x);
        Point ty = map.apply(y);
        for (double s : config.t_grid) {
            const Point& premise_target = config.premise_form == PremiseForm::x_Tx ? tx : ty;
            double premise_lhs = threshold * eval_metric(space, x, premise_target, s);
            if (!(premise_lhs <= eval_metric(space, x, y, s))) {
                ++report.vacuous;
                continue;
            }
            double lhs = eval_metric(space, tx, ty, s);
            double rhs = 0.0;
            switch (config.variant) {
                case SuzukiVariant::general:
                    rhs = config.u * m_value(space, map, x, y, s);
                    break;
                case SuzukiVariant::banach:
                    rhs = config.u * eval_metric(space, x, y, s);
                    break;
                case SuzukiVariant::kannan:
                    rhs = 0.5 * config.u *
                          (eval_metric(space, x, ty, s) + eval_metric(space, y, tx, s));
                    break;
            }
            ++report.implications_checked;
            if (violates(lhs, rhs)) {
                report.holds = false;
                report.violation = SuzukiViolation{x, y, s, lhs, rhs};
                return false;
            }
        }
        return true;
    };

    if (space.carrier.finite()) {
        std::size_t n = space.carrier.size();
        report.notes = "exhaustive over all ordered pairs";
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (!check_pair(space.carrier.at(i), space.carrier.at(j))) return report;
            }
        }
        return report;
    }

    report.notes = "sampled pairs";
    Rng rng(split_seed(config.seed, 51));
    for (long long k = 0; k < config.pair_samples; ++k) {
        Point x = space.carrier.sample(rng);
        Point y = space.carrier.sample(rng);
        if (!check_pair(x, y)) return report;
    }
    return report;
}

struct PremiseGridReport {
    std::vector<double> solvable_r;  // grid values of r whose premise holds on every t
    int grid_points = 0;
};

/// Scans r over a uniform grid of [0, 1) and reports for which r the premise
/// psi(r) * distance(x, Tx, t) <= distance(x, y, t) holds on the whole t-grid.
inline PremiseGridReport premise_solvable(const GThetaSpace& space, const SelfMap& map,
                                          const Point& x, const Point& y,
                                          const std::vector<double>& t_grid,
                                          int r_steps = 100) {
    if (r_steps < 1) throw std::domain_error("premise_solvable: r_steps must be >= 1");
    PremiseGridReport report;
    report.grid_points = r_steps;
    Point tx = map.apply(x);
    for (int k = 0; k < r_steps; ++k) {
        double r = static_cast<double>(k) / static_cast<double>(r_steps);
        bool holds = true;
        for (double t : t_grid) {
            if (!(psi(r) * eval_metric(space, x, tx, t) <= eval_metric(space, x, y, t))) {
                holds = false;
                break;
            }
        }
        if (holds) report.solvable_r.push_back(r);
    }
    return report;
}

/// Iterate trace with per-step distances over the t-grid.
struct StepRecord {
    long long iteration = 0;
    std::vector<double> distances;  // one per t-grid entry
};

struct FixedPointResult {
    Point fixed_point;
    long long iterations = 0;  // productive applications (a confirming zero-step not counted)
    std::vector<double> t_grid;
    std::vector<StepRecord> step_distances;
    bool converged = false;
    std::optional<double> observed_ratio;
};

/// sup over steps and grid t of consecutive step-distance ratios, skipping
/// steps whose denominator is below 1e-14. No valid ratio -> nullopt.
inline std::optional<double> estimate_contraction(const FixedPointResult& result) {
    std::optional<double> ratio;
    for (std::size_t k = 0; k + 1 < result.step_distances.size(); ++k) {
        const auto& prev = result.step_distances[k].distances;
        const auto& next = result.step_distances[k + 1].distances;
        for (std::size_t j = 0; j < prev.size() && j < next.size(); ++j) {
            if (prev[j] < 1e-14) continue;
            double r = next[j] / prev[j];
            if (!ratio || r > *ratio) ratio = r;
        }
    }
    return ratio;
}

/// Picard iteration w_{i+1} = apply(w_i), stopping when the step distance
/// falls under tol on the whole grid; the fixed point is then confirmed by
/// one more application. Hitting max_iter yields converged = false, not an
/// exception.
inline FixedPointResult iterate_fixed_point(const GThetaSpace& space, const SelfMap& map,
                                            const Point& w0, double tol, long long max_iter,
                                            std::vector<double> t_grid = default_t_grid()) {
    if (!(tol > 0.0)) throw std::domain_error("iterate_fixed_point: tol must be positive");
    if (max_iter < 1) throw std::domain_error("iterate_fixed_point: max_iter must be >= 1");
    FixedPointResult result;
    result.t_grid = t_grid;
    Point w = w0;
    for (long long i = 1; i <= max_iter; ++i) {
        Point next = map.apply(w);
        StepRecord record;
        record.iteration = i;
        bool small = true;
        for (double t : t_grid) {
            double d = eval_metric(space, next, w, t);
            record.distances.push_back(d);
            if (!(d < tol)) small = false;
        }
        result.step_distances.push_back(std::move(record));
        w = next;
        if (small) {
            result.converged = true;
            result.iterations = i - 1;
            break;
        }
        result.iterations = i;
    }
    result.fixed_point = w;
    if (result.converged) {
        Point confirm = map.apply(w);
        for (double t : t_grid) {
            if (!(eval_metric(space, confirm, w, t) <= tol)) {
                result.converged = false;  // the small step was not an actual fixed point
                break;
            }
        }
    }
    result.observed_ratio = estimate_contraction(result);
    return result;
}

/// Self-map catalog.
inline SelfMap make_self_map(const std::string& name) {
    auto v = [](double x, double y) { return Point(Vec2{x, y}); };
    if (name == "plane_contraction") {
        return {"plane_contraction", [v](const Point& p) {
                    const Vec2& q = p.get<Vec2>();
                    if (q == Vec2{7, 9}) return v(7, 3);
                    return v(3, 3);
                }};
    }
    if (name == "plane_extended") {
        // plane_contraction extended to the fifth point (9,7) -> (3,7)
        return {"plane_extended", [v](const Point& p) {
                    const Vec2& q = p.get<Vec2>();
                    if (q == Vec2{7, 9}) return v(7, 3);
                    if (q == Vec2{9, 7}) return v(3, 7);
                    return v(3, 3);
                }};
    }
    if (name == "identity") {
        return {"identity", [](const Point& p) { return p; }};
    }
    throw ConfigError("unknown self map: " + name);
}

}  // namespace gtheta
