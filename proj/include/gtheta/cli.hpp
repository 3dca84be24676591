#pragma once

#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gtheta/axioms.hpp"
#include "gtheta/serialize.hpp"

namespace gtheta {

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {
        "actions-verify", "spaces-list",    "verify",         "topology-ball",
        "topology-open-check", "seq-check", "fixed-point-run", "fde-solve",
        "repro-all"};
    return names;
}

/// Structural validation against the published schema
/// (share/config.schema.json). Returns one message per violation, each
/// pointing at the offending field.
inline std::vector<std::string> validate_config(const nlohmann::json& config) {
    std::vector<std::string> errors;
    auto fail = [&](const std::string& pointer, const std::string& what) {
        errors.push_back(pointer + ": " + what);
    };
    if (!config.is_object()) {
        fail("/", "config must be a JSON object");
        return errors;
    }
    if (!config.contains("command") || !config["command"].is_string()) {
        fail("/command", "required string naming the command");
        return errors;
    }
    std::string cmd = config["command"].get<std::string>();
    bool known = false;
    for (const auto& name : command_names()) known = known || name == cmd;
    if (!known) {
        fail("/command", "unknown command \"" + cmd + "\"");
        return errors;
    }
    if (config.contains("seed") && !config["seed"].is_number_integer()) {
        fail("/seed", "must be an integer");
    }
    if (config.contains("out") && !config["out"].is_string()) {
        fail("/out", "must be a string path");
    }
    if (config.contains("format")) {
        if (!config["format"].is_string() ||
            (config["format"] != "json" && config["format"] != "csv")) {
            fail("/format", "must be \"json\" or \"csv\"");
        }
    }
    nlohmann::json params = config.value("params", nlohmann::json::object());
    if (!params.is_object()) {
        fail("/params", "must be an object");
        return errors;
    }
    auto need_string = [&](const char* key) {
        if (!params.contains(key) || !params[key].is_string()) {
            fail(std::string("/params/") + key, "required string");
        }
    };
    auto need_positive = [&](const char* key) {
        if (params.contains(key) && (!params[key].is_number() ||
                                     !(params[key].get<double>() > 0.0))) {
            fail(std::string("/params/") + key, "must be a positive number");
        }
    };
    auto space_ok = [&]() {
        if (!params.contains("space")) {
            fail("/params/space", "required space name or config block");
        } else if (!params["space"].is_string() && !params["space"].is_object()) {
            fail("/params/space", "must be a name or a config block");
        }
    };
    if (cmd == "actions-verify") {
        need_string("action");
    } else if (cmd == "verify") {
        space_ok();
        if (!params.contains("axioms") || !params["axioms"].is_string() ||
            (params["axioms"] != "gtheta" && params["axioms"] != "parametric" &&
             params["axioms"] != "theta")) {
            fail("/params/axioms", "must be one of gtheta | parametric | theta");
        }
    } else if (cmd == "topology-ball" || cmd == "topology-open-check") {
        space_ok();
        need_string("center");
        need_positive("radius");
        need_positive("t");
        if (!params.contains("radius")) fail("/params/radius", "required positive number");
        if (!params.contains("t")) fail("/params/t", "required positive number");
    } else if (cmd == "seq-check") {
        space_ok();
        need_string("sequence");
        need_positive("eps");
        if (params.contains("check")) {
            std::string c = params["check"].is_string() ? params["check"].get<std::string>() : "";
            if (c != "convergence" && c != "cauchy" && c != "unique" && c != "continuity") {
                fail("/params/check", "must be convergence | cauchy | unique | continuity");
            }
        }
    } else if (cmd == "fixed-point-run") {
        space_ok();
        need_string("map");
        need_string("start");
        if (params.contains("u") &&
            (!params["u"].is_number() || params["u"].get<double>() < 0.0 ||
             params["u"].get<double>() >= 1.0)) {
            fail("/params/u", "must lie in [0, 1)");
        }
        if (params.contains("variant")) {
            std::string v = params["variant"].is_string() ? params["variant"].get<std::string>() : "";
            if (v != "general" && v != "banach" && v != "kannan") {
                fail("/params/variant", "must be general | banach | kannan");
            }
        }
    } else if (cmd == "fde-solve") {
        need_string("g");
        need_positive("eta");
        need_positive("tol");
        if (params.contains("n") && (!params["n"].is_number_integer() ||
                                     params["n"].get<long long>() < 2)) {
            fail("/params/n", "must be an integer >= 2");
        }
    }
    if (params.contains("trials") && (!params["trials"].is_number_integer() ||
                                      params["trials"].get<long long>() < 1)) {
        fail("/params/trials", "must be an integer >= 1");
    }
    return errors;
}

/// Parses a carrier point from CLI text, dispatching on the space family:
/// "a,b" planar, "p/q" or small integers for the rational carrier, integers
/// for the integer carrier, reals otherwise.
inline Point parse_point(const GThetaSpace& space, const std::string& text) {
    auto parse_double = [&](const std::string& s) {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        return v;
    };
    try {
        if (space.name == "finite_plane_space" || space.name == "step_space") {
            auto comma = text.find(',');
            if (comma == std::string::npos) {
                throw ConfigError("expected \"x,y\" for a planar point: " + text);
            }
            return Point(Vec2{parse_double(text.substr(0, comma)),
                              parse_double(text.substr(comma + 1))});
        }
        if (space.name == "seq_b_space") {
            auto slash = text.find('/');
            if (slash == std::string::npos) {
                return Point(Rational(std::stoll(text), 1));
            }
            return Point(Rational(std::stoll(text.substr(0, slash)),
                                  std::stoll(text.substr(slash + 1))));
        }
        if (space.name == "int_b_space") return Point(std::stoll(text));
        if (space.name == "sup_grid_space") {
            throw ConfigError("grid-function points cannot be written inline");
        }
        return Point(parse_double(text));
    } catch (const std::invalid_argument&) {
        throw ConfigError("cannot parse point \"" + text + "\" for " + space.name);
    } catch (const std::out_of_range&) {
        throw ConfigError("point out of range: " + text);
    }
}

inline SequenceSpec parse_sequence(const GThetaSpace& space, const std::string& name,
                                   long long horizon) {
    if (name == "half_inverse") return seq_half_inverse(horizon);
    if (name == "alternating01") return seq_alternating01(horizon);
    if (name.rfind("constant:", 0) == 0) {
        return seq_constant(parse_point(space, name.substr(9)), horizon);
    }
    throw ConfigError("unknown sequence: " + name);
}

struct RunOutcome {
    int exit_code = 0;
    ojson report;
    std::string human;
    std::optional<std::string> trace_csv;  // written when --out names a .csv
};

namespace detail {

inline GThetaSpace space_from_params(const nlohmann::json& params) {
    const auto& block = params.at("space");
    if (block.is_string()) return make_catalog_space(block.get<std::string>());
    return space_from_config(block);
}

inline std::string verdict_line(const std::string& label, bool ok) {
    return (ok ? "[pass] " : "[FAIL] ") + label;
}

struct ReproCase {
    std::string id;
    std::string description;
    std::function<void(std::string& expected, std::string& observed, bool& ok)> run;
};

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

inline const std::vector<ReproCase>& repro_cases();

}  // namespace detail

inline RunOutcome run_repro_all(std::uint64_t seed);

/// Executes a validated config and returns the machine report, a short
/// human summary, the optional CSV trace, and the exit status: 0 when the
/// mathematics confirms, 1 when it refutes (or iteration fails to settle),
/// 2 on configuration problems.
inline RunOutcome run_command(const nlohmann::json& config) {
    {
        auto errors = validate_config(config);
        if (!errors.empty()) {
            RunOutcome out;
            out.exit_code = 2;
            out.report = ojson{{"error", "invalid config"}, {"details", errors}};
            out.human = "invalid config: " + errors.front() + "\n";
            return out;
        }
    }
    const std::string cmd = config["command"].get<std::string>();
    const auto seed = static_cast<std::uint64_t>(config.value("seed", 42));
    nlohmann::json params = config.value("params", nlohmann::json::object());

    try {
        RunOutcome out;
        if (cmd == "spaces-list") {
            out.report = ojson::array();
            for (const auto& name : space_catalog_names()) {
                GThetaSpace s = make_catalog_space(name);
                out.report.push_back(ojson{
                    {"name", s.name},
                    {"carrier", s.carrier.description()},
                    {"action", s.action.name},
                    {"control", ojson{{"name", s.control.name}, {"alpha", s.control.alpha}}},
                    {"t_monotone", s.flags.t_monotone == TMonotone::nonincreasing
                                       ? "nonincreasing" : "none"},
                    {"known_violations", s.known_violations}});
                out.human += s.name + "\n";
            }
            return out;
        }

        if (cmd == "actions-verify") {
            std::string name = params["action"].get<std::string>();
            BAction action = params.contains("k") ? make_action(name, params["k"].get<double>())
                                                  : make_action(name);
            long long trials = params.value("trials", 10000LL);
            auto reports = verify_action(action, trials, seed);
            bool ok = all_pass(reports);
            out.report = ojson{{"action", action.name},
                               {"known_violations", action.known_violations},
                               {"reports", to_json(reports)}};
            if (params.contains("control")) {
                // accepted either as a name with a sibling alpha, or as a
                // block {"name": ..., "alpha": ...}
                const auto& c = params["control"];
                ControlPair control =
                    c.is_object() ? make_control(c.at("name").get<std::string>(),
                                                 c.value("alpha", 0.0))
                                  : make_control(c.get<std::string>(),
                                                 params.value("alpha", 0.0));
                auto creports = verify_control(control, params.value("kmax", 2000LL));
                ok = ok && all_pass(creports);
                out.report["control_reports"] = to_json(creports);
            }
            out.exit_code = ok ? 0 : 1;
            for (const auto& r : reports) {
                out.human += detail::verdict_line(action.name + " " + r.axiom,
                                                  r.verdict == Verdict::pass) + "\n";
            }
            return out;
        }

        if (cmd == "verify") {
            GThetaSpace space = detail::space_from_params(params);
            std::string axioms = params["axioms"].get<std::string>();
            long long trials = params.value("trials", 10000LL);
            std::vector<AxiomReport> reports;
            if (axioms == "gtheta") {
                reports = verify_gtheta(space, trials, seed);
            } else if (axioms == "parametric") {
                reports.push_back(verify_parametric_triangle(space, trials, seed));
            } else {
                reports.push_back(verify_theta_parametric(space, trials, seed));
            }
            bool ok = all_pass(reports);
            out.exit_code = ok ? 0 : 1;
            out.report = ojson{{"space", space.name},
                               {"axioms", axioms},
                               {"reports", to_json(reports)}};
            for (const auto& r : reports) {
                out.human += detail::verdict_line(space.name + " " + r.axiom,
                                                  r.verdict == Verdict::pass) + "\n";
            }
            return out;
        }

        if (cmd == "topology-ball") {
            GThetaSpace space = detail::space_from_params(params);
            Ball ball{parse_point(space, params["center"].get<std::string>()),
                      params["radius"].get<double>(), params["t"].get<double>(),
                      params.value("closed", false) ? BallKind::closed : BallKind::open};
            auto members = ball_members(space, ball);
            out.report = ojson{{"space", space.name},
                               {"kind", ball.kind == BallKind::open ? "open" : "closed"},
                               {"center", to_json(ball.center)},
                               {"radius", ball.radius},
                               {"t", ball.t},
                               {"count", members.size()},
                               {"members", ojson::array()}};
            for (const auto& m : members) out.report["members"].push_back(to_json(m));
            out.human = "members: " + std::to_string(members.size()) + "\n";
            return out;
        }

        if (cmd == "topology-open-check") {
            GThetaSpace space = detail::space_from_params(params);
            Ball ball{parse_point(space, params["center"].get<std::string>()),
                      params["radius"].get<double>(), params["t"].get<double>(),
                      params.value("closed", false) ? BallKind::closed : BallKind::open};
            auto set = ball_members(space, ball);
            auto report = is_open_set(space, set, default_radius_grid(ball.radius),
                                      default_t_grid());
            out.exit_code = report.pass ? 0 : 1;
            out.report = ojson{{"space", space.name},
                               {"set_size", set.size()},
                               {"pass", report.pass},
                               {"notes", report.notes}};
            if (!report.pass) {
                out.report["failing_point"] = to_json(*report.failing_point);
                out.report["failing_t"] = *report.failing_t;
                out.report["escapes"] = ojson::array();
                for (const auto& e : report.escapes) {
                    out.report["escapes"].push_back(
                        ojson{{"radius", e.radius}, {"escapee", to_json(e.escapee)}});
                }
            }
            out.human = detail::verdict_line("open-set check", report.pass) + "\n";
            return out;
        }

        if (cmd == "seq-check") {
            GThetaSpace space = detail::space_from_params(params);
            long long horizon = params.value("horizon", 1000LL);
            SequenceSpec seq = parse_sequence(space, params["sequence"].get<std::string>(),
                                              horizon);
            double eps = params.value("eps", 1e-6);
            std::string check = params.value("check", "convergence");
            std::vector<double> grid = default_t_grid();
            if (params.contains("t_grid")) {
                grid = params["t_grid"].get<std::vector<double>>();
                for (double t : grid) {
                    if (!(t > 0.0)) throw ConfigError("t_grid entries must be positive");
                }
                if (grid.empty()) throw ConfigError("t_grid must not be empty");
            }
            if (check == "cauchy") {
                auto report = check_cauchy(space, seq, grid, eps, seed);
                out.exit_code = report.verdict == CheckVerdict::pass ? 0 : 1;
                out.report = ojson{{"check", "cauchy"},
                                   {"verdict", to_cstring(report.verdict)},
                                   {"best_pair_max", report.best_pair_max},
                                   {"notes", report.notes}};
            } else {
                Point limit = parse_point(space, params.at("limit").get<std::string>());
                if (check == "unique") {
                    Point limit2 = parse_point(space, params.at("limit2").get<std::string>());
                    auto report = check_unique_limit(space, seq, limit, limit2, grid, eps);
                    out.exit_code = report.verdict == CheckVerdict::pass ? 0 : 1;
                    out.report = ojson{{"check", "unique"},
                                       {"verdict", to_cstring(report.verdict)},
                                       {"first", to_json(report.first)},
                                       {"second", to_json(report.second)}};
                } else if (check == "continuity") {
                    Point probe = parse_point(space, params.at("probe").get<std::string>());
                    auto report = check_sequential_continuity(space, seq, limit, probe, grid, eps);
                    out.exit_code = report.verdict == CheckVerdict::pass ? 0 : 1;
                    out.report = ojson{{"check", "continuity"}};
                    out.report.update(to_json(report));
                } else {
                    auto report = check_convergence(space, seq, limit, grid, eps);
                    out.exit_code = report.verdict == CheckVerdict::pass ? 0 : 1;
                    out.report = ojson{{"check", "convergence"}};
                    out.report.update(to_json(report));
                    std::ostringstream csv;
                    csv.precision(17);
                    csv << "iota,t,distance\n";
                    for (long long i = 0; i <= seq.horizon; ++i) {
                        for (double t : grid) {
                            csv << i << "," << t << ","
                                << eval_metric(space, seq.generator(i), limit, t) << "\n";
                        }
                    }
                    out.trace_csv = csv.str();
                }
            }
            out.human = detail::verdict_line("seq " + check, out.exit_code == 0) + "\n";
            return out;
        }

        if (cmd == "fixed-point-run") {
            GThetaSpace space = detail::space_from_params(params);
            SelfMap map = make_self_map(params["map"].get<std::string>());
            Point start = parse_point(space, params["start"].get<std::string>());
            SuzukiConfig cfg;
            cfg.u = params.value("u", 0.875);
            std::string variant = params.value("variant", "general");
            cfg.variant = variant == "banach" ? SuzukiVariant::banach
                          : variant == "kannan" ? SuzukiVariant::kannan
                                                : SuzukiVariant::general;
            cfg.premise_form = params.value("premise", "x_Tx") == "x_Ty" ? PremiseForm::x_Ty
                                                                         : PremiseForm::x_Tx;
            cfg.seed = seed;
            auto suzuki = verify_suzuki(space, map, cfg);
            auto result = iterate_fixed_point(space, map, start, params.value("tol", 1e-10),
                                              params.value("max_iter", 200LL));
            out.exit_code = (suzuki.holds && result.converged) ? 0 : 1;
            out.report = ojson{{"space", space.name},
                               {"map", map.name},
                               {"contraction", to_json(suzuki)},
                               {"iteration", to_json(result)}};
            std::ostringstream csv;
            csv.precision(17);
            csv << "iteration,t,distance\n";
            for (const auto& step : result.step_distances) {
                for (std::size_t j = 0; j < result.t_grid.size(); ++j) {
                    csv << step.iteration << "," << result.t_grid[j] << ","
                        << step.distances[j] << "\n";
                }
            }
            out.trace_csv = csv.str();
            out.human = detail::verdict_line("contraction holds", suzuki.holds) + "\n" +
                        detail::verdict_line("iteration converged", result.converged) + "\n";
            return out;
        }

        if (cmd == "fde-solve") {
            FdeProblem problem;
            problem.eta = params.value("eta", 1.5);
            NamedRhs rhs = make_rhs(params["g"].get<std::string>());
            problem.g = rhs.g;
            problem.lipschitz_L = rhs.lipschitz_L;
            problem.n = static_cast<std::size_t>(params.value("n", 2000LL));
            problem.tol = params.value("tol", 1e-10);
            problem.max_iter = params.value("max_iter", 400LL);
            auto lip = verify_lipschitz(problem, params.value("samples", 2000LL), seed);
            out.report = ojson{{"g", rhs.name}, {"lipschitz", to_json(lip)}};
            if (!lip.gate_open) {
                out.exit_code = 1;
                out.human = "[FAIL] contraction gate: r = " + detail::fmt(lip.implied_r) +
                            " >= 1; problem rejected\n";
                out.report["gate"] = "rejected";
                return out;
            }
            FdeSolution sol = solve_fde(problem);
            out.report["solve"] = to_json(sol);
            out.exit_code = sol.picard.converged ? 0 : 1;
            std::ostringstream csv;
            csv.precision(17);
            csv << "t,f\n";
            for (std::size_t i = 0; i <= problem.n; ++i) {
                csv << sol.solution.node(i) << "," << sol.solution[i] << "\n";
            }
            out.trace_csv = csv.str();
            out.human = detail::verdict_line("picard converged", sol.picard.converged) + "\n" +
                        "residual " + detail::fmt(sol.residual_sup) + ", boundary gap " +
                        detail::fmt(sol.boundary_gap) + "\n";
            return out;
        }

        if (cmd == "repro-all") {
            return run_repro_all(seed);
        }

        RunOutcome unknown;
        unknown.exit_code = 2;
        unknown.report = ojson{{"error", "unknown command"}};
        return unknown;
    } catch (const ConfigError& e) {
        RunOutcome out;
        out.exit_code = 2;
        out.report = ojson{{"error", e.what()}};
        out.human = std::string("configuration error: ") + e.what() + "\n";
        return out;
    } catch (const UnsupportedError& e) {
        RunOutcome out;
        out.exit_code = 2;
        out.report = ojson{{"error", e.what()}};
        out.human = std::string("unsupported: ") + e.what() + "\n";
        return out;
    } catch (const EvaluationError& e) {
        RunOutcome out;
        out.exit_code = 2;
        out.report = ojson{{"error", e.what()}};
        out.human = std::string("evaluation error: ") + e.what() + "\n";
        return out;
    } catch (const SearchExhaustedError& e) {
        RunOutcome out;
        out.exit_code = 1;
        out.report = ojson{{"error", e.what()}};
        out.human = std::string("search exhausted: ") + e.what() + "\n";
        return out;
    } catch (const nlohmann::json::exception& e) {
        RunOutcome out;
        out.exit_code = 2;
        out.report = ojson{{"error", e.what()}};
        out.human = std::string("configuration error: ") + e.what() + "\n";
        return out;
    } catch (const std::invalid_argument& e) {
        RunOutcome out;
        out.exit_code = 2;
        out.report = ojson{{"error", e.what()}};
        out.human = std::string("configuration error: ") + e.what() + "\n";
        return out;
    } catch (const std::domain_error& e) {
        RunOutcome out;
        out.exit_code = 2;
        out.report = ojson{{"error", e.what()}};
        out.human = std::string("configuration error: ") + e.what() + "\n";
        return out;
    }
}

/// Wraps a machine report for writing: volatile fields (the timestamp) are
/// confined to the header so the body stays byte-identical across runs.
inline ojson wrap_report(const nlohmann::json& config, const ojson& report) {
    std::time_t now = std::time(nullptr);
    char stamp[32] = {0};
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    ojson out;
    out["header"] = ojson{{"tool", "gthetalab"},
                          {"timestamp", stamp},
                          {"config", ojson(config)}};
    out["report"] = report;
    return out;
}

}  // namespace gtheta

#include "gtheta/repro.hpp"
