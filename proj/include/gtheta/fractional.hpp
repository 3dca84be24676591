#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gtheta/grid_function.hpp"
#include "gtheta/report.hpp"
#include "gtheta/rng.hpp"
#include "gtheta/suzuki.hpp"

namespace gtheta {

/// Boundary-value problem D^eta f = g(tau, f) on (0,1), 1 < eta <= 2, with
/// f(0) = 0 and the order-1 integral of f over [0,1] equal to f'(0). Solved
/// through the equivalent integral operator, never by discretizing the
/// derivative.
struct FdeProblem {
    double eta = 1.5;
    std::function<double(double, double)> g;  // (tau, f_value)
    double lipschitz_L = 0.0;
    std::size_t n = 2000;
    double tol = 1e-10;
    long long max_iter = 500;

    /// r = 4 L / Gamma(eta + 1); the solver refuses r >= 1.
    double contraction_bound() const { return 4.0 * lipschitz_L / std::tgamma(eta + 1.0); }
};

inline void validate(const FdeProblem& p) {
    if (!(p.eta > 1.0) || !(p.eta <= 2.0)) {
        throw ConfigError("fde: eta must lie in (1, 2]");
    }
    if (p.n < 2) throw ConfigError("fde: grid size must be >= 2");
    if (!(p.tol > 0.0)) throw ConfigError("fde: tol must be positive");
    if (!(p.lipschitz_L >= 0.0)) throw ConfigError("fde: Lipschitz constant must be >= 0");
    if (!p.g) throw ConfigError("fde: missing right-hand side");
}

/// Fractional integral of order eta of the piecewise-linear interpolant of
/// fn, at an arbitrary t in [0,1]. Product integration: the kernel moments
/// int (t-s)^{eta-1} {1, s} ds are integrated exactly per cell, so the
/// weakly singular kernel costs no quadrature order.
inline double rl_integral(const GridFunction& fn, double eta, double t) {
    if (!(eta > 0.0)) throw std::domain_error("rl_integral: eta must be positive");
    if (!(t >= 0.0) || t > 1.0) throw std::domain_error("rl_integral: t must lie in [0, 1]");
    if (t == 0.0) return 0.0;
    const std::size_t n = fn.segments();
    const double h = fn.spacing();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = static_cast<double>(i) * h;
        if (a >= t) break;
        double b = std::min(a + h, t);
        double ua = t - a;
        double ub = t - b;
        double pa = std::pow(ua, eta), pb = std::pow(ub, eta);
        double m0 = (pa - pb) / eta;
        double m1 = t * m0 - (pa * ua - pb * ub) / (eta + 1.0);
        double slope = (fn[i + 1] - fn[i]) / h;
        total += (fn[i] - slope * a) * m0 + slope * m1;
    }
    return total / std::tgamma(eta);
}

namespace detail {

/// rl_integral evaluated at every grid node at once. On the uniform grid
/// the kernel moments depend only on the offset j - i, so the power tables
/// are O(n) and the sweep O(n^2).
inline std::vector<double> rl_integral_nodes(const GridFunction& fn, double eta) {
    const std::size_t n = fn.segments();
    const double h = fn.spacing();
    std::vector<double> pw(n + 1), pw1(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        double u = static_cast<double>(k) * h;
        pw[k] = std::pow(u, eta);
        pw1[k] = pw[k] * u;
    }
    const double inv_gamma = 1.0 / std::tgamma(eta);
    std::vector<double> out(n + 1, 0.0);
    for (std::size_t j = 1; j <= n; ++j) {
        double t = static_cast<double>(j) * h;
        double total = 0.0;
        for (std::size_t i = 0; i < j; ++i) {
            std::size_t ka = j - i;      // (t - s_i) / h
            std::size_t kb = ka - 1;
            double m0 = (pw[ka] - pw[kb]) / eta;
            double m1 = t * m0 - (pw1[ka] - pw1[kb]) / (eta + 1.0);
            double a = static_cast<double>(i) * h;
            double slope = (fn[i + 1] - fn[i]) / h;
            total += (fn[i] - slope * a) * m0 + slope * m1;
        }
        out[j] = total * inv_gamma;
    }
    return out;
}

inline double trapezoid(const std::vector<double>& values, double h) {
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
    return sum * h;
}

}  // namespace detail

/// The boundary-value integral operator: H(xi)(t) = I^eta[g(., xi)](t)
/// + 2 t * int_0^1 I^eta[g(., xi)](s) ds, with the outer integral by
/// composite trapezoid. H(xi)(0) is exactly zero.
inline GridFunction apply_H(const FdeProblem& problem, const GridFunction& xi) {
    validate(problem);
    if (xi.segments() != problem.n) {
        throw std::invalid_argument("apply_H: grid size mismatch");
    }
    const std::size_t n = problem.n;
    GridFunction g_values(n);
    for (std::size_t i = 0; i <= n; ++i) {
        double v = problem.g(xi.node(i), xi[i]);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "apply_H: right-hand side not finite at node " << i
               << " (t = " << xi.node(i) << ")";
            throw EvaluationError(os.str());
        }
        g_values[i] = v;
    }
    std::vector<double> integral = detail::rl_integral_nodes(g_values, problem.eta);
    double outer = detail::trapezoid(integral, xi.spacing());
    GridFunction out(n);
    out[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        out[i] = integral[i] + 2.0 * xi.node(i) * outer;
    }
    return out;
}

struct LipschitzReport {
    bool pass = true;
    double implied_r = 0.0;
    bool gate_open = false;  // r < 1
    long long samples = 0;
    std::uint64_t seed = 0;
    std::optional<Witness> violation;
};

/// Samples (t, chi1, chi2) and checks |g(t,chi1) - g(t,chi2)| against
/// L |chi1 - chi2|; reports the implied contraction bound r.
inline LipschitzReport verify_lipschitz(const FdeProblem& problem, long long samples,
                                        std::uint64_t seed) {
    validate(problem);
    if (samples < 1) throw std::domain_error("verify_lipschitz: samples must be >= 1");
    LipschitzReport report;
    report.samples = samples;
    report.seed = seed;
    report.implied_r = problem.contraction_bound();
    report.gate_open = report.implied_r < 1.0;
    Rng rng(split_seed(seed, 61));
    for (long long i = 0; i < samples; ++i) {
        double t = rng.uniform(0.0, 1.0);
        double c1 = rng.uniform(-50.0, 50.0);
        double c2 = rng.uniform(-50.0, 50.0);
        double lhs = std::abs(problem.g(t, c1) - problem.g(t, c2));
        double rhs = problem.lipschitz_L * std::abs(c1 - c2);
        if (violates(lhs, rhs)) {
            report.pass = false;
            Witness w;
            w.params = {{"t", t}, {"chi1", c1}, {"chi2", c2}};
            w.lhs = lhs;
            w.rhs = rhs;
            w.relation = "|g(t,chi1) - g(t,chi2)| > L |chi1 - chi2|";
            report.violation = w;
            break;
        }
    }
    return report;
}

struct FdeSolution {
    FixedPointResult picard;
    GridFunction solution;
    double residual_sup = 0.0;        // max_i |H(f*)_i - f*_i|
    double integral_value = 0.0;      // trapezoid of f* over [0,1]
    double derivative_at_zero = 0.0;  // one-sided second-order difference
    double boundary_gap = 0.0;        // |integral - f'(0)|
    double contraction_r = 0.0;

    FdeSolution() : solution(2) {}
};

/// Picard solution of the boundary-value problem on the sup-metric grid
/// space. The Lipschitz gate r < 1 is enforced before iterating;
/// non-convergence within max_iter comes back as converged = false.
inline FdeSolution solve_fde(const FdeProblem& problem, const GridFunction& initial) {
    validate(problem);
    if (initial.segments() != problem.n) {
        throw std::invalid_argument("solve_fde: initial iterate grid mismatch");
    }
    double r = problem.contraction_bound();
    if (r >= 1.0) {
        std::ostringstream os;
        os << "solve_fde: contraction gate rejected r = " << r << " (needs r < 1)";
        throw ConfigError(os.str());
    }
    GThetaSpace space = make_catalog_space(
        "sup_grid_space", nlohmann::json{{"n", static_cast<long long>(problem.n)}});
    SelfMap H_map{"bvp_integral_operator", [&problem](const Point& p) {
                      return Point(apply_H(problem, *p.get<GridHandle>()));
                  }};
    // distance is sup-diff / t, so the {0.5, 1, 2} grid stops at sup-diff < tol/2
    FdeSolution out;
    out.contraction_r = r;
    out.picard = iterate_fixed_point(space, H_map, Point(initial), problem.tol,
                                     problem.max_iter, {0.5, 1.0, 2.0});
    const GridFunction& f = *out.picard.fixed_point.get<GridHandle>();
    out.solution = f;
    out.residual_sup = apply_H(problem, f).sup_diff(f);
    std::vector<double> values(f.values().begin(), f.values().end());
    out.integral_value = detail::trapezoid(values, f.spacing());
    double h = f.spacing();
    out.derivative_at_zero = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    out.boundary_gap = std::abs(out.integral_value - out.derivative_at_zero);
    return out;
}

inline FdeSolution solve_fde(const FdeProblem& problem) {
    validate(problem);
    return solve_fde(problem, GridFunction(problem.n));  // zero satisfies f(0) = 0
}

/// Named right-hand sides: "zero", "constant:c=<v>", and
/// "linear:lambda=<v>,c=<tau | number | poly(a0;a1;...)>".
struct NamedRhs {
    std::string name;
    std::function<double(double, double)> g;
    double lipschitz_L = 0.0;
};

inline NamedRhs make_rhs(const std::string& spec) {
    auto fail = [&]() -> NamedRhs {
        throw ConfigError("unknown right-hand side: " + spec);
    };
    if (spec == "zero") {
        return {"zero", [](double, double) { return 0.0; }, 0.0};
    }
    auto colon = spec.find(':');
    if (colon == std::string::npos) return fail();
    std::string kind = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    auto get_field = [&](const std::string& key) -> std::string {
        auto pos = rest.find(key + "=");
        if (pos == std::string::npos) return {};
        pos += key.size() + 1;
        std::size_t end = pos;
        int depth = 0;
        while (end < rest.size() && (rest[end] != ',' || depth > 0)) {
            if (rest[end] == '(') ++depth;
            if (rest[end] == ')') --depth;
            ++end;
        }
        return rest.substr(pos, end - pos);
    };
    if (kind == "constant") {
        std::string c = get_field("c");
        if (c.empty()) return fail();
        double value = std::stod(c);
        return {"constant", [value](double, double) { return value; }, 0.0};
    }
    if (kind == "linear") {
        std::string ls = get_field("lambda");
        if (ls.empty()) return fail();
        double lambda = std::stod(ls);
        std::string forcing = get_field("c");
        std::function<double(double)> force;
        if (forcing.empty() || forcing == "0") {
            force = [](double) { return 0.0; };
        } else if (forcing == "tau") {
            force = [](double tau) { return tau; };
        } else if (forcing.rfind("poly(", 0) == 0 && forcing.back() == ')') {
            std::vector<double> coeffs;
            std::string body = forcing.substr(5, forcing.size() - 6);
            std::size_t start = 0;
            while (start <= body.size()) {
                auto sep = body.find(';', start);
                std::string tok = body.substr(start, sep == std::string::npos ? sep : sep - start);
                if (!tok.empty()) coeffs.push_back(std::stod(tok));
                if (sep == std::string::npos) break;
                start = sep + 1;
            }
            if (coeffs.empty()) return fail();
            force = [coeffs](double tau) {
                double v = 0.0;
                for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * tau + *it;
                return v;
            };
        } else {
            double value = std::stod(forcing);
            force = [value](double) { return value; };
        }
        return {"linear",
                [lambda, force](double tau, double f) { return lambda * f + force(tau); },
                std::abs(lambda)};
    }
    return fail();
}

}  // namespace gtheta
