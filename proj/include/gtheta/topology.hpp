#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtheta/sequences.hpp"
#include "gtheta/space.hpp"

namespace gtheta {

enum class BallKind { open, closed };

struct Ball {
    Point center;
    double radius = 1.0;
    double t = 1.0;
    BallKind kind = BallKind::open;
};

/// Exact member set of an open/closed ball over an enumerable carrier,
/// emitted in deterministic order.
inline std::vector<Point> ball_members(const GThetaSpace& space, const Ball& ball) {
    if (!(ball.radius > 0.0)) throw std::domain_error("ball_members: radius must be positive");
    if (!(ball.t > 0.0)) throw std::domain_error("ball_members: t must be positive");
    if (!space.carrier.enumerable()) {
        throw UnsupportedError("ball_members: continuous carrier");
    }
    std::vector<Point> members;
    for (std::size_t i = 0; i < space.carrier.size(); ++i) {
        Point p = space.carrier.at(i);
        double d = eval_metric(space, ball.center, p, ball.t);
        bool in = ball.kind == BallKind::open ? d < ball.radius : d <= ball.radius;
        if (in) members.push_back(std::move(p));
    }
    std::sort(members.begin(), members.end());
    return members;
}

inline bool set_contains(const std::vector<Point>& set, const Point& p) {
    for (const auto& q : set) {
        if (q == p) return true;
    }
    return false;
}

/// Default radius grid relative to a query radius: {base * 2^j : -20 <= j <= 0}.
inline std::vector<double> default_radius_grid(double base) {
    std::vector<double> g;
    for (int j = -20; j <= 0; ++j) g.push_back(base * std::ldexp(1.0, j));
    return g;
}

struct OpenSetEscape {
    double radius = 0.0;  // the ball radius that failed to stay inside
    Point escapee;        // a member of that ball outside the set
};

struct OpenSetReport {
    bool pass = true;
    std::optional<Point> failing_point;
    std::optional<double> failing_t;
    std::vector<OpenSetEscape> escapes;  // one per radius-grid entry at the failure
    std::string notes;
};

/// Openness relative to the supplied grids: pass means every point of the
/// set, at every grid t, has some grid radius whose ball stays inside. The
/// verdict is grid-relative and labeled as such.
inline OpenSetReport is_open_set(const GThetaSpace& space, const std::vector<Point>& set,
                                 const std::vector<double>& radius_grid,
                                 const std::vector<double>& t_grid) {
    if (!space.carrier.enumerable()) {
        throw UnsupportedError("is_open_set: continuous carrier");
    }
    OpenSetReport report;
    report.notes = "existence of a radius checked over the supplied grid only";

    bool covers_carrier = true;
    for (std::size_t i = 0; i < space.carrier.size() && covers_carrier; ++i) {
        if (!set_contains(set, space.carrier.at(i))) covers_carrier = false;
    }
    if (covers_carrier) return report;  // every ball is a subset of the carrier

    for (const auto& a : set) {
        for (double q : t_grid) {
            std::vector<OpenSetEscape> escapes;
            bool some_radius_fits = false;
            for (double radius : radius_grid) {
                std::optional<Point> escapee;
                for (std::size_t i = 0; i < space.carrier.size(); ++i) {
                    Point p = space.carrier.at(i);
                    if (eval_metric(space, a, p, q) < radius && !set_contains(set, p)) {
                        escapee = std::move(p);
                        break;
                    }
                }
                if (!escapee) { some_radius_fits = true; break; }
                escapes.push_back({radius, *escapee});
            }
            if (!some_radius_fits) {
                report.pass = false;
                report.failing_point = a;
                report.failing_t = q;
                report.escapes = std::move(escapes);
                return report;
            }
        }
    }
    return report;
}

struct ClosedSetProbe {
    SequenceSpec sequence;
    Point limit;
};

struct ClosedSetReport {
    bool pass = true;
    std::optional<std::size_t> refuting_probe;
    std::optional<Point> outside_limit;
    std::string notes;
};

/// Closedness against supplied probe sequences: fails when a probe lying in
/// the set converges (per check_convergence) to a limit outside the set.
inline ClosedSetReport is_closed_set(const GThetaSpace& space, const std::vector<Point>& set,
                                     const std::vector<ClosedSetProbe>& probes,
                                     const std::vector<double>& t_grid, double eps = 1e-6) {
    ClosedSetReport report;
    report.notes = "refutation-only check against the supplied probes";
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
        const auto& probe = probes[pi];
        for (long long i = 0; i <= probe.sequence.horizon; ++i) {
            if (!set_contains(set, probe.sequence.generator(i))) {
                throw std::invalid_argument("is_closed_set: probe sequence leaves the set");
            }
        }
        if (set_contains(set, probe.limit)) continue;
        ConvergenceReport conv = check_convergence(space, probe.sequence, probe.limit, t_grid, eps);
        if (conv.verdict == CheckVerdict::pass) {
            report.pass = false;
            report.refuting_probe = pi;
            report.outside_limit = probe.limit;
            return report;
        }
    }
    return report;
}

/// Separating neighborhoods for distinct points, following the constructive
/// recipe: find t0 with positive distance, take a_k = distance/k, split it
/// through the action (B3), and return the first disjoint pair of balls at
/// parameter t0/2. Disjointness is verified by enumeration before returning.
inline std::pair<Ball, Ball> hausdorff_witness(const GThetaSpace& space, const Point& x,
                                               const Point& y,
                                               const std::vector<double>& t_grid,
                                               int k_max = 64) {
    if (x == y) throw std::invalid_argument("hausdorff_witness: points must be distinct");
    if (!space.carrier.enumerable()) {
        throw UnsupportedError("hausdorff_witness: disjointness needs an enumerable carrier");
    }
    double t0 = 0.0, separation = 0.0;
    for (double t : t_grid) {
        double d = eval_metric(space, x, y, t);
        if (d > 0.0) { t0 = t; separation = d; break; }
    }
    if (separation <= 0.0) {
        throw SearchExhaustedError("hausdorff_witness: no grid t separates the points");
    }
    for (int k = 1; k <= k_max; ++k) {
        double a_k = separation / static_cast<double>(k);
        double b_k = 0.5 * a_k;
        double c_k = 0.0;
        try {
            c_k = solve_action(space.action, a_k, b_k);
        } catch (const UnsolvableError&) {
            continue;  // action cannot split this level; try a smaller one
        }
        if (!(b_k > 0.0) || !(c_k > 0.0)) continue;
        Ball bx{x, b_k, t0 / 2.0, BallKind::open};
        Ball by{y, c_k, t0 / 2.0, BallKind::open};
        std::vector<Point> mx = ball_members(space, bx);
        std::vector<Point> my = ball_members(space, by);
        bool disjoint = true;
        for (const auto& p : mx) {
            if (set_contains(my, p)) { disjoint = false; break; }
        }
        if (disjoint) return {bx, by};
    }
    throw SearchExhaustedError("hausdorff_witness: no disjoint pair within k_max levels");
}

/// True iff some element of F lies strictly within distance r of x at
/// parameter t; the closure-meets-ball predicate on finite carriers.
inline bool closure_meets_ball(const GThetaSpace& space, const std::vector<Point>& F,
                               const Point& x, double r, double t) {
    if (!(r > 0.0)) throw std::domain_error("closure_meets_ball: r must be positive");
    for (const auto& a : F) {
        if (eval_metric(space, x, a, t) < r) return true;
    }
    return false;
}

struct OpenBallSufficiencyReport {
    bool condition_holds = false;
    double h_value = 0.0;
    bool indeterminate = false;
    std::string notes;
};

/// Computes h(radius, alpha): the largest delta such that 0 < s < delta
/// implies f(s) < f(radius) - alpha, by bisection on the control function.
/// The ball is an open set whenever radius < h(radius, alpha).
inline OpenBallSufficiencyReport open_ball_sufficiency(const GThetaSpace& space,
                                                       const Ball& ball) {
    if (ball.kind != BallKind::open) {
        throw std::invalid_argument("open_ball_sufficiency: ball must be open");
    }
    if (!(ball.radius > 0.0)) throw std::domain_error("open_ball_sufficiency: radius must be positive");
    OpenBallSufficiencyReport report;
    const auto& f = space.control.f;
    double threshold = f(ball.radius) - space.control.alpha;
    if (!std::isfinite(threshold)) {
        report.indeterminate = true;
        report.notes = "f(radius) - alpha is not finite";
        return report;
    }
    auto below = [&](double s) { return f(s) < threshold; };
    double lo = 1e-300;
    if (!below(lo)) {
        report.indeterminate = true;
        report.notes = "control function does not reach the threshold within the bracket";
        return report;
    }
    double hi = ball.radius;
    if (below(hi)) {
        // alpha < 0 or a decreasing anomaly: expand until the predicate flips
        for (int i = 0; i < 64 && below(hi); ++i) hi *= 2.0;
        if (below(hi)) {
            report.h_value = hi;
            report.condition_holds = true;
            report.notes = "threshold never reached while expanding; h effectively unbounded";
            return report;
        }
    }
    for (int i = 0; i < kSolveMaxIter; ++i) {
        double mid = 0.5 * (lo + hi);
        if (below(mid)) lo = mid; else hi = mid;
    }
    report.h_value = lo;
    report.condition_holds = ball.radius < report.h_value;
    return report;
}

}  // namespace gtheta
