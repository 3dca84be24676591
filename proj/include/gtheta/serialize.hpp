#pragma once

#include <string>

#include "gtheta/fractional.hpp"
#include "gtheta/report.hpp"
#include "gtheta/sequences.hpp"
#include "gtheta/suzuki.hpp"
#include "gtheta/topology.hpp"

#include "json.hpp"

namespace gtheta {

using ojson = nlohmann::ordered_json;

inline ojson to_json(const Point& p) {
    ojson j;
    if (p.holds<long long>()) {
        j["type"] = "int";
        j["value"] = p.get<long long>();
    } else if (p.holds<double>()) {
        j["type"] = "real";
        j["value"] = p.get<double>();
    } else if (p.holds<Vec2>()) {
        j["type"] = "vec2";
        j["value"] = {p.get<Vec2>().x, p.get<Vec2>().y};
    } else if (p.holds<Rational>()) {
        j["type"] = "rational";
        j["value"] = {p.get<Rational>().num, p.get<Rational>().den};
    } else {
        j["type"] = "grid";
        j["value"] = ojson::array();
        const auto& g = p.get<GridHandle>();
        if (g) {
            for (double v : g->values()) j["value"].push_back(v);
        }
    }
    return j;
}

inline ojson to_json(const Witness& w) {
    ojson j;
    j["points"] = ojson::array();
    for (const auto& p : w.points) j["points"].push_back(to_json(p));
    for (const auto& [k, v] : w.params) j[k] = v;
    j["lhs"] = w.lhs;
    j["rhs"] = w.rhs;
    j["relation"] = w.relation;
    return j;
}

inline ojson to_json(const AxiomReport& r) {
    ojson j;
    j["axiom"] = r.axiom;
    j["verdict"] = to_cstring(r.verdict);
    if (r.witness) j["witness"] = to_json(*r.witness);
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

inline ojson to_json(const std::vector<AxiomReport>& reports) {
    ojson j = ojson::array();
    for (const auto& r : reports) j.push_back(to_json(r));
    return j;
}

inline ojson to_json(const ConvergenceReport& r) {
    ojson j;
    j["verdict"] = to_cstring(r.verdict);
    j["per_t"] = ojson::array();
    for (const auto& row : r.per_t) {
        ojson o;
        o["t"] = row.t;
        if (row.tail_index) o["tail_index"] = *row.tail_index;
        o["max_tail_distance"] = row.max_tail_distance;
        o["tail_settled"] = row.window.settled;
        o["tail_mean"] = row.window.mean;
        j["per_t"].push_back(std::move(o));
    }
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

inline ojson to_json(const SeqContinuityReport& r) {
    ojson j;
    j["verdict"] = to_cstring(r.verdict);
    j["continuous"] = r.continuous;
    j["per_t"] = ojson::array();
    for (const auto& row : r.per_t) {
        j["per_t"].push_back(ojson{{"t", row.t},
                                   {"tail_value", row.tail_value},
                                   {"point_value", row.point_value},
                                   {"settled", row.settled}});
    }
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

inline ojson to_json(const SuzukiReport& r) {
    ojson j;
    j["holds"] = r.holds;
    j["implications_checked"] = r.implications_checked;
    j["vacuous"] = r.vacuous;
    if (r.violation) {
        j["violation"] = ojson{{"x", to_json(r.violation->x)},
                               {"y", to_json(r.violation->y)},
                               {"s", r.violation->s},
                               {"lhs", r.violation->lhs},
                               {"rhs", r.violation->rhs}};
    }
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

inline ojson to_json(const FixedPointResult& r) {
    ojson j;
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    j["fixed_point"] = to_json(r.fixed_point);
    if (r.observed_ratio) j["observed_ratio"] = *r.observed_ratio;
    j["t_grid"] = r.t_grid;
    return j;
}

inline ojson to_json(const LipschitzReport& r) {
    ojson j;
    j["pass"] = r.pass;
    j["implied_r"] = r.implied_r;
    j["gate_open"] = r.gate_open;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    if (r.violation) j["violation"] = to_json(*r.violation);
    return j;
}

inline ojson to_json(const FdeSolution& s) {
    ojson j;
    j["converged"] = s.picard.converged;
    j["iterations"] = s.picard.iterations;
    j["contraction_r"] = s.contraction_r;
    if (s.picard.observed_ratio) j["observed_ratio"] = *s.picard.observed_ratio;
    j["residual_sup"] = s.residual_sup;
    j["integral_of_solution"] = s.integral_value;
    j["derivative_at_zero"] = s.derivative_at_zero;
    j["boundary_gap"] = s.boundary_gap;
    j["n"] = s.solution.segments();
    return j;
}

}  // namespace gtheta
