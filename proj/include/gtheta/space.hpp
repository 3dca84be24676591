#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gtheta/actions.hpp"
#include "gtheta/errors.hpp"
#include "gtheta/point.hpp"
#include "gtheta/rng.hpp"

#include "json.hpp"

namespace gtheta {

struct FiniteCarrier {
    std::vector<Point> points;
};

/// Countable carrier stored as a truncation: elements enumerable up to
/// `count`, membership decided analytically beyond it.
struct TruncatedCarrier {
    std::function<Point(std::size_t)> element;
    std::size_t count = 0;
    std::function<bool(const Point&)> member;
    std::string description;
};

/// Continuous carrier represented by a seeded sampler; axiom certification
/// on these spaces is statistical, refutation is by witness.
struct SamplerCarrier {
    std::function<Point(Rng&)> draw;
    std::function<bool(const Point&)> member;
    std::string description;
};

class Carrier {
public:
    Carrier() = default;
    Carrier(FiniteCarrier c) : v_(std::move(c)) {}
    Carrier(TruncatedCarrier c) : v_(std::move(c)) {}
    Carrier(SamplerCarrier c) : v_(std::move(c)) {}

    bool enumerable() const { return !std::holds_alternative<SamplerCarrier>(v_); }
    bool finite() const { return std::holds_alternative<FiniteCarrier>(v_); }

    std::size_t size() const {
        if (auto* f = std::get_if<FiniteCarrier>(&v_)) return f->points.size();
        if (auto* t = std::get_if<TruncatedCarrier>(&v_)) return t->count;
        throw UnsupportedError("carrier is not enumerable");
    }

    Point at(std::size_t i) const {
        if (auto* f = std::get_if<FiniteCarrier>(&v_)) return f->points[i];
        if (auto* t = std::get_if<TruncatedCarrier>(&v_)) return t->element(i);
        throw UnsupportedError("carrier is not enumerable");
    }

    bool member(const Point& p) const {
        if (auto* f = std::get_if<FiniteCarrier>(&v_)) {
            for (const auto& q : f->points) {
                if (q == p) return true;
            }
            return false;
        }
        if (auto* t = std::get_if<TruncatedCarrier>(&v_)) return t->member(p);
        return std::get<SamplerCarrier>(v_).member(p);
    }

    Point sample(Rng& rng) const {
        if (auto* s = std::get_if<SamplerCarrier>(&v_)) return s->draw(rng);
        return at(rng.index(size()));
    }

    std::string description() const {
        if (auto* f = std::get_if<FiniteCarrier>(&v_))
            return "finite(" + std::to_string(f->points.size()) + ")";
        if (auto* t = std::get_if<TruncatedCarrier>(&v_)) return t->description;
        return std::get<SamplerCarrier>(v_).description;
    }

private:
    std::variant<FiniteCarrier, TruncatedCarrier, SamplerCarrier> v_;
};

enum class TMonotone { nonincreasing, none };

/// A known counterexample tuple for the same-parameter theta-triangle,
/// attached to catalog entries the way known_violations document actions.
/// Checked (and re-evaluated through the ordinary metric path) before any
/// randomized search.
struct ThetaTriangleProbe {
    Point x, y, z;
    double t = 1.0;
};

/// Carrier + parametric distance P(x, y, t) with its attached B-action and
/// control pair. Immutable after construction; distance evaluation is pure.
struct GThetaSpace {
    std::string name;
    Carrier carrier;
    std::function<double(const Point&, const Point&, double)> distance;
    BAction action;
    ControlPair control;
    struct {
        bool symmetric = true;
        TMonotone t_monotone = TMonotone::nonincreasing;
    } flags;
    bool complete = true;  // asserted metadata, not verified by sampling
    std::vector<std::string> known_violations;
    std::vector<ThetaTriangleProbe> theta_probes;

    bool known_violator(const std::string& axiom) const {
        return std::find(known_violations.begin(), known_violations.end(), axiom) !=
               known_violations.end();
    }
};

inline double eval_metric(const GThetaSpace& space, const Point& x, const Point& y, double t) {
    if (!(t > 0.0)) throw std::domain_error("eval_metric: t must be positive");
    if (!space.carrier.member(x) || !space.carrier.member(y)) {
        throw std::domain_error("eval_metric: point outside the carrier of " + space.name);
    }
    return space.distance(x, y, t);
}

namespace detail {

inline bool is_even_reciprocal_or_zero(const Rational& r) {
    if (r.num == 0) return true;
    return r.num == 1 && r.den % 2 == 0;
}

inline bool is_zero_or_one(const Rational& r) {
    return (r.num == 0) || (r.num == 1 && r.den == 1);
}

/// b-metric on {0, 1, 1/2, 1/3, ...}: 1 between 0 and 1, |xi - eta| on
/// {0} and even reciprocals, `otherwise_value` elsewhere.
inline double seq_b_base_metric(const Rational& a, const Rational& b, double otherwise_value) {
    if (a == b) return 0.0;
    if (is_zero_or_one(a) && is_zero_or_one(b)) return 1.0;
    if (is_even_reciprocal_or_zero(a) && is_even_reciprocal_or_zero(b)) {
        return std::abs(a.value() - b.value());
    }
    return otherwise_value;
}

inline double chebyshev(const Vec2& a, const Vec2& b) {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

inline double taxicab(const Vec2& a, const Vec2& b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

inline double squared_euclidean(const Vec2& a, const Vec2& b) {
    return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
}

/// 100 / 50 / 25 / 0 step profile driven by two plane metrics.
inline double step_profile(const Vec2& a, const Vec2& b, double t) {
    if (a == b) return 0.0;
    double s1 = chebyshev(a, b);
    double s2 = taxicab(a, b);
    if (t <= s1) return 100.0;
    if (t <= s2) return 50.0;
    if (t <= 2.0 * s2) return 25.0;
    return 0.0;
}

/// 25 / 50 / 100 d/t profile; increases then decays in t.
inline double inc_dec_profile(double d, double t) {
    if (t <= d) return 25.0;
    if (t <= 2.0 * d) return 50.0;
    return 100.0 * d / t;
}

inline SamplerCarrier real_line_sampler(double half_width) {
    SamplerCarrier c;
    c.draw = [half_width](Rng& rng) { return Point(rng.uniform(-half_width, half_width)); };
    c.member = [](const Point& p) { return p.holds<double>() && std::isfinite(p.get<double>()); };
    c.description = "R, sampled from [-" + std::to_string(half_width) + ", " +
                    std::to_string(half_width) + "]";
    return c;
}

inline SamplerCarrier plane_sampler(double half_width) {
    SamplerCarrier c;
    c.draw = [half_width](Rng& rng) {
        return Point(Vec2{rng.uniform(-half_width, half_width),
                          rng.uniform(-half_width, half_width)});
    };
    c.member = [](const Point& p) {
        return p.holds<Vec2>() && std::isfinite(p.get<Vec2>().x) && std::isfinite(p.get<Vec2>().y);
    };
    c.description = "R^2, sampled box half-width " + std::to_string(half_width);
    return c;
}

}  // namespace detail

/// Construct a catalog space. Parameters come as a JSON block, e.g.
///   make_catalog_space("seq_b_space", {{"variant","K83"},{"depth",10000}})
inline GThetaSpace make_catalog_space(const std::string& name,
                                      const nlohmann::json& params = nlohmann::json::object()) {
    auto get_int = [&](const char* key, long long dflt) -> long long {
        if (!params.contains(key)) return dflt;
        if (!params[key].is_number_integer()) throw ConfigError(std::string(key) + " must be an integer");
        return params[key].get<long long>();
    };
    auto get_double = [&](const char* key, double dflt) -> double {
        if (!params.contains(key)) return dflt;
        if (!params[key].is_number()) throw ConfigError(std::string(key) + " must be a number");
        return params[key].get<double>();
    };

    GThetaSpace s;
    s.name = name;

    if (name == "int_b_space") {
        long long depth = get_int("depth", 1000);
        if (depth < 1) throw ConfigError("int_b_space: depth must be >= 1");
        TruncatedCarrier c;
        c.count = static_cast<std::size_t>(2 * depth + 1);
        c.element = [depth](std::size_t i) { return Point(static_cast<long long>(i) - depth); };
        c.member = [](const Point& p) { return p.holds<long long>(); };
        c.description = "Z, enumerated over [-" + std::to_string(depth) + ", " + std::to_string(depth) + "]";
        s.carrier = std::move(c);
        s.distance = [](const Point& x, const Point& y, double t) {
            long long a = x.get<long long>(), b = y.get<long long>();
            auto parity = [](long long v) { return ((v % 2) + 2) % 2; };
            double base = (parity(a) == parity(b))
                              ? std::abs(static_cast<double>(a - b))
                              : 5.0 * std::abs(static_cast<double>(a - b)) + 9.0;
            return base / t;
        };
        s.action = make_action("plus");
        s.control = make_control("ln", std::log(5.0));
        s.known_violations = {"PP3", "dtheta3"};
        return s;
    }

    if (name == "exp_max_space") {
        double k = get_double("k", 1.0);
        if (k < 1.0) throw ConfigError("exp_max_space: k must be >= 1");
        s.carrier = detail::real_line_sampler(get_double("box", 100.0));
        s.distance = [k](const Point& x, const Point& y, double t) {
            double a = x.get<double>(), b = y.get<double>();
            if (a == b) return 0.0;
            return k * std::exp(std::abs(a - b) / t);
        };
        s.action = make_action("max");
        s.control = make_control("neg_inv", 1.0 / k);
        s.known_violations = {"dtheta3"};
        return s;
    }

    if (name == "step_space") {
        s.carrier = detail::plane_sampler(get_double("box", 1000.0));
        s.distance = [](const Point& x, const Point& y, double t) {
            return detail::step_profile(x.get<Vec2>(), y.get<Vec2>(), t);
        };
        s.action = make_action("plus");
        s.control = make_control("ln", 0.0);
        s.known_violations = {"dtheta3"};
        s.theta_probes = {{Point(Vec2{1.0, 0.0}), Point(Vec2{0.0, 0.5}),
                           Point(Vec2{0.25, 0.125}), 1.0}};
        return s;
    }

    if (name == "piecewise_space") {
        if (params.contains("points")) {
            FiniteCarrier c;
            for (const auto& v : params["points"]) c.points.emplace_back(v.get<double>());
            if (c.points.size() < 2) throw ConfigError("piecewise_space: need at least two points");
            s.carrier = std::move(c);
        } else {
            s.carrier = detail::real_line_sampler(get_double("box", 100.0));
        }
        s.distance = [](const Point& x, const Point& y, double t) {
            return detail::inc_dec_profile(std::abs(x.get<double>() - y.get<double>()), t);
        };
        s.action = make_action("half_sum");
        s.control = make_control("ln", std::log(4.0));
        s.flags.t_monotone = TMonotone::none;
        s.known_violations = {"PP3", "dtheta3"};
        return s;
    }

    if (name == "seq_b_space") {
        std::string variant = params.value("variant", "K83");
        long long depth = get_int("depth", 10000);
        if (depth < 2) throw ConfigError("seq_b_space: depth must be >= 2");
        double otherwise = 0.0;
        double K = 0.0;
        if (variant == "K83") { otherwise = 4.0; K = 8.0 / 3.0; }
        else if (variant == "K4quarter") { otherwise = 0.25; K = 4.0; }
        else throw ConfigError("seq_b_space: variant must be K83 or K4quarter");
        TruncatedCarrier c;
        c.count = static_cast<std::size_t>(depth + 1);
        // index 0 -> 0; index i >= 1 -> 1/i
        c.element = [](std::size_t i) {
            return i == 0 ? Point(Rational(0, 1)) : Point(Rational(1, static_cast<long long>(i)));
        };
        c.member = [](const Point& p) {
            if (!p.holds<Rational>()) return false;
            const auto& r = p.get<Rational>();
            return (r.num == 0 && r.den == 1) || (r.num == 1 && r.den >= 1);
        };
        c.description = "{0} u {1/n}, enumerated to n = " + std::to_string(depth);
        s.carrier = std::move(c);
        s.distance = [otherwise](const Point& x, const Point& y, double t) {
            return detail::seq_b_base_metric(x.get<Rational>(), y.get<Rational>(), otherwise) / t;
        };
        s.action = make_action("plus");
        s.control = make_control("ln", std::log(K));
        s.known_violations = {"PP3", "dtheta3"};
        return s;
    }

    if (name == "finite_plane_space") {
        FiniteCarrier c;
        c.points = {Point(Vec2{3, 3}), Point(Vec2{7, 3}), Point(Vec2{3, 7}), Point(Vec2{7, 9})};
        if (params.value("extended", false)) c.points.push_back(Point(Vec2{9, 7}));
        s.carrier = std::move(c);
        s.distance = [](const Point& x, const Point& y, double t) {
            return detail::squared_euclidean(x.get<Vec2>(), y.get<Vec2>()) / t;
        };
        s.action = make_action("plus");
        s.control = make_control("ln", std::log(2.0));
        s.known_violations = {"dtheta3"};
        return s;
    }

    if (name == "sup_grid_space") {
        long long n = get_int("n", 100);
        if (n < 2) throw ConfigError("sup_grid_space: n must be >= 2");
        auto nn = static_cast<std::size_t>(n);
        SamplerCarrier c;
        c.draw = [nn](Rng& rng) {
            GridFunction f(nn);
            for (std::size_t i = 0; i <= nn; ++i) f[i] = rng.uniform(-10.0, 10.0);
            return Point(std::move(f));
        };
        c.member = [nn](const Point& p) {
            return p.holds<GridHandle>() && p.get<GridHandle>() &&
                   p.get<GridHandle>()->segments() == nn;
        };
        c.description = "grid functions on [0,1], n = " + std::to_string(n);
        s.carrier = std::move(c);
        s.distance = [](const Point& x, const Point& y, double t) {
            return x.get<GridHandle>()->sup_diff(*y.get<GridHandle>()) / t;
        };
        s.action = make_action("plus");
        s.control = make_control("ln", 0.0);
        return s;
    }

    if (name == "exp_parametric_space") {
        // parametric but not generalized parametric; kept in the catalog as
        // the standing refutation exhibit for the split-parameter triangle
        s.carrier = detail::real_line_sampler(get_double("box", 100.0));
        s.distance = [](const Point& x, const Point& y, double t) {
            double d = std::abs(x.get<double>() - y.get<double>());
            if (d == 0.0) return 0.0;  // exp(t) overflows for grid-sized t
            return std::exp(t) * d;
        };
        s.action = make_action("plus");
        s.control = make_control("ln", 0.0);
        s.flags.t_monotone = TMonotone::none;
        s.known_violations = {"PP3", "Ptheta2"};
        return s;
    }

    throw ConfigError("unknown space: " + name);
}

inline GThetaSpace space_from_config(const nlohmann::json& block) {
    if (!block.is_object() || !block.contains("space") || !block["space"].is_string()) {
        throw ConfigError("space config block needs a \"space\" name");
    }
    return make_catalog_space(block["space"].get<std::string>(), block);
}

inline std::vector<std::string> space_catalog_names() {
    return {"int_b_space", "exp_max_space", "step_space",  "piecewise_space",
            "seq_b_space", "finite_plane_space", "sup_grid_space", "exp_parametric_space"};
}

/// Infimum construction of a split-parameter metric from the theta-parametric
/// one: min over intermediate z and discretized splits t = t1 + t2 of
/// action(P(x,z,t1), P(z,y,t2)), never above the direct value P(x,y,t).
inline double induce_parametric(const GThetaSpace& space, const Point& x, const Point& y,
                                double t, std::size_t split_count) {
    if (split_count < 1) throw std::domain_error("induce_parametric: split_count must be >= 1");
    if (!(t > 0.0)) throw std::domain_error("induce_parametric: t must be positive");
    if (!space.carrier.enumerable()) {
        throw UnsupportedError("induce_parametric: carrier must be finite");
    }
    double best = eval_metric(space, x, y, t);
    std::size_t n = space.carrier.size();
    for (std::size_t zi = 0; zi < n; ++zi) {
        Point z = space.carrier.at(zi);
        for (std::size_t i = 1; i <= split_count; ++i) {
            double t1 = t * static_cast<double>(i) / static_cast<double>(split_count + 1);
            double t2 = t - t1;
            double combined = eval_action(space.action, space.distance(x, z, t1),
                                          space.distance(z, y, t2));
            best = std::min(best, combined);
        }
    }
    return best;
}

}  // namespace gtheta
