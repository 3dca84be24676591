#pragma once

#include <cmath>
#include <sstream>

#include "gtheta/cli.hpp"

namespace gtheta {
namespace detail {

// One row per worked example and counterexample from the source material,
// each re-run from scratch against the library.
inline const std::vector<ReproCase>& repro_cases() {
    static const std::vector<ReproCase> cases = [] {
        std::vector<ReproCase> v;
        auto add = [&](const std::string& id, const std::string& description, auto fn) {
            v.push_back({id, description, fn});
        };

        add("action-theta1-eval", "product-sum action evaluated at (2, 3)",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "11";
                double got = eval_action(make_action("theta1"), 2.0, 3.0);
                observed = fmt(got);
                ok = got == 11.0;
            });

        add("action-solve-plus", "additive action splits 5 over x = 2",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "3";
                double got = solve_action(make_action("plus"), 5.0, 2.0);
                observed = fmt(got);
                ok = std::abs(got - 3.0) <= 1e-9;
            });

        add("action-solve-theta1", "product-sum action splits 5 over x = 1 (closed form 2)",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "2";
                double got = solve_action(make_action("theta1"), 5.0, 1.0);
                observed = fmt(got);
                ok = std::abs(got - 2.0) <= 1e-9;
            });

        add("action-max-strictness", "max fails strict monotonicity with a replayable witness",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "B2 fail, witness replays";
                auto reports = verify_action(make_action("max"), 10000, 42);
                const AxiomReport* b2 = find_report(reports, "B2");
                ok = b2 && b2->verdict == Verdict::fail && b2->witness.has_value();
                if (ok) {
                    auto [lhs, rhs] = replay_action_witness(make_action("max"), *b2);
                    ok = lhs == b2->witness->lhs && rhs == b2->witness->rhs;
                }
                observed = ok ? "B2 fail, witness replays" : "no replayable B2 failure";
            });

        add("action-half-sum-splitting", "half-sum fails the splitting axiom with a witness",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "B3 fail, witness replays";
                auto reports = verify_action(make_action("half_sum"), 10000, 42);
                const AxiomReport* b3 = find_report(reports, "B3");
                ok = b3 && b3->verdict == Verdict::fail && b3->witness.has_value();
                if (ok) {
                    auto [lhs, rhs] = replay_action_witness(make_action("half_sum"), *b3);
                    ok = lhs == b3->witness->lhs && rhs == b3->witness->rhs;
                }
                observed = ok ? "B3 fail, witness replays" : "no replayable B3 failure";
            });

        add("action-clean-catalog", "every undocumented action passes 10^4 trials",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "all pass";
                ok = true;
                std::string bad;
                for (const auto& name : action_catalog_names()) {
                    BAction a = make_action(name);
                    if (!a.known_violations.empty()) continue;
                    if (!all_pass(verify_action(a, 10000, 42))) {
                        ok = false;
                        bad += name + " ";
                    }
                }
                observed = ok ? "all pass" : "failed: " + bad;
            });

        add("control-family", "log and reciprocal controls admitted, identity rejected",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "ln pass, neg_inv pass, identity F2 fail";
                bool ln_ok = all_pass(verify_control(make_control("ln"), 2000));
                bool ni_ok = all_pass(verify_control(make_control("neg_inv", 0.5), 2000));
                auto idr = verify_control(make_control("identity"), 2000);
                const AxiomReport* f2 = find_report(idr, "F2");
                bool id_fails = f2 && f2->verdict == Verdict::fail;
                ok = ln_ok && ni_ok && id_fails;
                observed = ok ? expected : "mismatch";
            });

        add("space-int-b-eval", "parity-weighted integer distance at (2, 4), t = 2",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "1";
                GThetaSpace s = make_catalog_space("int_b_space");
                double got = eval_metric(s, Point(2), Point(4), 2.0);
                observed = fmt(got);
                ok = got == 1.0;
            });

        add("space-exp-max-formula", "exponential distance e^{|x-y|/t} at (0, 2), t = 1",
            [](std::string& expected, std::string& observed, bool& ok) {
                GThetaSpace s = make_catalog_space("exp_max_space",
                                                   nlohmann::json{{"k", 1.0}});
                expected = fmt(std::exp(2.0));
                double got = eval_metric(s, Point(0.0), Point(2.0), 1.0);
                observed = fmt(got);
                ok = got == std::exp(2.0);
            });

        add("space-step-worked-values", "step distances 100 vs combined 50 at the documented triple",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "100 vs 25+25";
                GThetaSpace s = make_catalog_space("step_space");
                Point a{Vec2{1, 0}}, sg{Vec2{0, 0.5}}, tau{Vec2{0.25, 0.125}};
                double direct = eval_metric(s, a, sg, 1.0);
                double chained = eval_metric(s, a, tau, 1.0) + eval_metric(s, sg, tau, 1.0);
                observed = fmt(direct) + " vs " + fmt(chained);
                ok = direct == 100.0 && chained == 50.0;
            });

        add("space-piecewise-bands", "25/50/decay bands of the increasing-then-decaying profile",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "25, 50, 25";
                GThetaSpace s = make_catalog_space("piecewise_space");
                double v1 = eval_metric(s, Point(0.0), Point(2.0), 1.0);
                double v2 = eval_metric(s, Point(0.0), Point(2.0), 3.0);
                double v3 = eval_metric(s, Point(0.0), Point(2.0), 8.0);
                observed = fmt(v1) + ", " + fmt(v2) + ", " + fmt(v3);
                ok = v1 == 25.0 && v2 == 50.0 && v3 == 25.0;
            });

        add("induced-parametric-bound", "induced split-parameter distance never beats a single chain",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "bounded by every single-step combination";
                GThetaSpace s = make_catalog_space("finite_plane_space");
                ok = true;
                for (std::size_t i = 0; i < s.carrier.size() && ok; ++i) {
                    for (std::size_t j = 0; j < s.carrier.size() && ok; ++j) {
                        Point x = s.carrier.at(i), y = s.carrier.at(j);
                        double ind = induce_parametric(s, x, y, 1.0, 4);
                        for (std::size_t z = 0; z < s.carrier.size(); ++z) {
                            double chain = eval_action(s.action,
                                                       eval_metric(s, x, s.carrier.at(z), 0.5),
                                                       eval_metric(s, s.carrier.at(z), y, 0.5));
                            if (ind > chain + 1e-12) ok = false;
                        }
                    }
                }
                observed = ok ? expected : "bound violated";
            });

        add("separation-gtheta", "step space passes the relaxed-axiom verifier at 10^4 trials",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "all pass";
                GThetaSpace s = make_catalog_space("step_space");
                ok = all_pass(verify_gtheta(s, 10000, 42));
                observed = ok ? "all pass" : "failed";
            });

        add("separation-parametric", "step space passes the split-parameter triangle at 10^4 trials",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "pass";
                GThetaSpace s = make_catalog_space("step_space");
                ok = verify_parametric_triangle(s, 10000, 42).verdict == Verdict::pass;
                observed = ok ? "pass" : "fail";
            });

        add("separation-theta-witness",
            "same-parameter triangle fails at the documented triple with 50 < 100",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "fail: 100 vs 50 at ((1,0),(0,1/2),(1/4,1/8)), t=1";
                GThetaSpace s = make_catalog_space("step_space");
                AxiomReport r = verify_theta_parametric(s, 10000, 42);
                ok = r.verdict == Verdict::fail && r.witness && r.witness->lhs == 100.0 &&
                     r.witness->rhs == 50.0 && r.witness->params.at("t") == 1.0 &&
                     r.witness->points.size() == 3 &&
                     r.witness->points[0] == Point(Vec2{1, 0}) &&
                     r.witness->points[1] == Point(Vec2{0, 0.5}) &&
                     r.witness->points[2] == Point(Vec2{0.25, 0.125});
                observed = ok ? expected
                              : (r.witness ? "fail: " + fmt(r.witness->lhs) + " vs " +
                                                 fmt(r.witness->rhs)
                                           : "no witness");
            });

        add("exp-parametric-refutation",
            "exponentially weighted distance is not a split-parameter metric",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "violating triple found";
                GThetaSpace s = make_catalog_space("exp_parametric_space");
                AxiomReport r = verify_parametric_triangle(s, 10000, 42);
                ok = r.verdict == Verdict::fail && r.witness.has_value();
                if (ok) {
                    auto replayed = replay_space_witness(s, r, default_t_grid());
                    ok = replayed && replayed->first == r.witness->lhs &&
                         replayed->second == r.witness->rhs;
                }
                observed = ok ? expected : "no violation within the trial budget";
            });

        add("open-ball-members", "the radius-2 ball around 1 contains exactly {0, 1}",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "{0, 1}";
                GThetaSpace s = make_catalog_space(
                    "seq_b_space", nlohmann::json{{"variant", "K83"}, {"depth", 10000}});
                auto members = ball_members(s, {Point(Rational(1, 1)), 2.0, 1.0, BallKind::open});
                ok = members.size() == 2 && members[0] == Point(Rational(0, 1)) &&
                     members[1] == Point(Rational(1, 1));
                observed = ok ? expected : "size " + std::to_string(members.size());
            });

        add("open-ball-not-open", "that ball is not an open set: 0 has no safe radius",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "fails at 0 with an even-reciprocal escapee at base distance 4";
                GThetaSpace s = make_catalog_space(
                    "seq_b_space", nlohmann::json{{"variant", "K83"}, {"depth", 10000}});
                auto set = ball_members(s, {Point(Rational(1, 1)), 2.0, 1.0, BallKind::open});
                auto rep = is_open_set(s, set, default_radius_grid(2.0), default_t_grid());
                ok = !rep.pass && rep.failing_point && *rep.failing_point == Point(Rational(0, 1)) &&
                     !rep.escapes.empty();
                for (const auto& e : rep.escapes) {
                    if (!ok) break;
                    const auto& r = e.escapee.get<Rational>();
                    ok = r.num == 1 && r.den % 2 == 0 &&
                         eval_metric(s, Point(Rational(1, 1)), e.escapee, 1.0) == 4.0;
                }
                observed = ok ? expected : "open-set check did not refute as documented";
            });

        add("closed-ball-members", "the closed radius-1/2 ball around 1 misses only 0",
            [](std::string& expected, std::string& observed, bool& ok) {
                GThetaSpace s = make_catalog_space(
                    "seq_b_space", nlohmann::json{{"variant", "K4quarter"}, {"depth", 2000}});
                expected = "carrier minus {0} (2000 members)";
                auto members = ball_members(s, {Point(Rational(1, 1)), 0.5, 1.0, BallKind::closed});
                ok = members.size() == s.carrier.size() - 1 &&
                     !set_contains(members, Point(Rational(0, 1)));
                observed = ok ? expected : "size " + std::to_string(members.size());
            });

        add("closed-ball-not-closed", "the probe 1/(2n) converges to 0 outside that closed ball",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "refuted by the probe with limit 0";
                GThetaSpace s = make_catalog_space(
                    "seq_b_space", nlohmann::json{{"variant", "K4quarter"}, {"depth", 2000}});
                auto set = ball_members(s, {Point(Rational(1, 1)), 0.5, 1.0, BallKind::closed});
                ClosedSetProbe probe{seq_half_inverse(900), Point(Rational(0, 1))};
                auto rep = is_closed_set(s, set, {probe}, {0.5, 1.0, 2.0}, 2e-3);
                ok = !rep.pass && rep.outside_limit && *rep.outside_limit == Point(Rational(0, 1));
                observed = ok ? expected : "closed-set check did not refute";
            });

        add("hausdorff-plane", "disjoint separating balls for every distinct pair of the 4-point plane",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "12/12 pairs separated";
                GThetaSpace s = make_catalog_space("finite_plane_space");
                int separated = 0;
                for (std::size_t i = 0; i < 4; ++i) {
                    for (std::size_t j = 0; j < 4; ++j) {
                        if (i == j) continue;
                        auto [bx, by] = hausdorff_witness(s, s.carrier.at(i), s.carrier.at(j),
                                                          default_t_grid());
                        auto mx = ball_members(s, bx);
                        auto my = ball_members(s, by);
                        bool disjoint = true;
                        for (const auto& p : mx) disjoint = disjoint && !set_contains(my, p);
                        if (disjoint) ++separated;
                    }
                }
                observed = std::to_string(separated) + "/12 pairs separated";
                ok = separated == 12;
            });

        add("closure-meets-ball", "strict radius test around (3,3) against {(7,3)}",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "r=17 meets, r=16 does not";
                GThetaSpace s = make_catalog_space("finite_plane_space");
                std::vector<Point> F = {Point(Vec2{7, 3})};
                bool hit = closure_meets_ball(s, F, Point(Vec2{3, 3}), 17.0, 1.0);
                bool miss = !closure_meets_ball(s, F, Point(Vec2{3, 3}), 16.0, 1.0);
                ok = hit && miss;
                observed = ok ? expected : "unexpected strictness";
            });

        add("open-ball-threshold", "h(radius, alpha) = radius / K for the log control",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "0.75";
                GThetaSpace s = make_catalog_space(
                    "seq_b_space", nlohmann::json{{"variant", "K83"}, {"depth", 100}});
                auto rep = open_ball_sufficiency(s, {Point(Rational(1, 1)), 2.0, 1.0,
                                                     BallKind::open});
                observed = fmt(rep.h_value);
                ok = !rep.indeterminate && std::abs(rep.h_value - 0.75) <= 1e-9 &&
                     !rep.condition_holds;
            });

        add("seq-convergence", "1/(2i) converges to 0 in the truncated reciprocal space",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "pass";
                GThetaSpace s = make_catalog_space(
                    "seq_b_space", nlohmann::json{{"variant", "K83"}, {"depth", 2000}});
                auto rep = check_convergence(s, seq_half_inverse(600), Point(Rational(0, 1)),
                                             {0.25, 1.0, 4.0}, 1e-2);
                ok = rep.verdict == CheckVerdict::pass;
                observed = to_cstring(rep.verdict);
            });

        add("seq-wrong-limit", "the same sequence stays at 4/t from the point 1",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "fail, settled at 4/t";
                GThetaSpace s = make_catalog_space(
                    "seq_b_space", nlohmann::json{{"variant", "K83"}, {"depth", 2000}});
                auto rep = check_convergence(s, seq_half_inverse(600), Point(Rational(1, 1)),
                                             {0.25, 1.0, 4.0}, 1e-2);
                ok = rep.verdict == CheckVerdict::fail;
                for (const auto& row : rep.per_t) {
                    ok = ok && row.window.settled && row.window.mean == 4.0 / row.t;
                }
                observed = ok ? expected : "tail did not settle at 4/t";
            });

        add("seq-cauchy-alternating", "0,1,0,1,... is stuck at 14/t between parities",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "fail at 14/t";
                GThetaSpace s = make_catalog_space("int_b_space", nlohmann::json{{"depth", 50}});
                auto rep = check_cauchy(s, seq_alternating01(400), {0.25, 1.0, 4.0}, 1e-2);
                ok = rep.verdict == CheckVerdict::fail && rep.best_pair_max == 14.0 / 0.25;
                observed = ok ? expected : "best pair max " + fmt(rep.best_pair_max);
            });

        add("seq-discontinuity", "tail 4/t against point value 1/t across the dyadic grid",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "discontinuous: 4/t vs 1/t";
                GThetaSpace s = make_catalog_space(
                    "seq_b_space", nlohmann::json{{"variant", "K83"}, {"depth", 2000}});
                std::vector<double> grid;
                for (int j = -5; j <= 5; ++j) grid.push_back(std::ldexp(1.0, j));
                auto rep = check_sequential_continuity(s, seq_half_inverse(600),
                                                       Point(Rational(0, 1)),
                                                       Point(Rational(1, 1)), grid, 0.05);
                ok = rep.verdict == CheckVerdict::pass && !rep.continuous;
                for (const auto& row : rep.per_t) {
                    ok = ok && std::abs(row.tail_value - 4.0 / row.t) <= 1e-9 * (4.0 / row.t) &&
                         std::abs(row.point_value - 1.0 / row.t) <= 1e-9 * (1.0 / row.t);
                }
                observed = ok ? expected : "tail/point values off";
            });

        add("psi-breakpoints", "threshold function agrees across both branch boundaries",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "1 and 2 - sqrt(2)";
                double golden = (std::sqrt(5.0) - 1.0) / 2.0;
                double inv_sqrt2 = 1.0 / std::sqrt(2.0);
                double left = psi(golden);
                double right = psi(inv_sqrt2);
                ok = std::abs(left - 1.0) <= 1e-12 &&
                     std::abs((1.0 - golden) / (golden * golden) - 1.0) <= 1e-12 &&
                     std::abs(right - (2.0 - std::sqrt(2.0))) <= 1e-12 &&
                     std::abs(1.0 / (inv_sqrt2 + 1.0) - (2.0 - std::sqrt(2.0))) <= 1e-12;
                observed = fmt(left) + " and " + fmt(right);
            });

        add("suzuki-plane-exhaustive", "premise-gated contraction holds at u = 7/8 over all pairs",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "holds (16 ordered pairs x t-grid)";
                GThetaSpace s = make_catalog_space("finite_plane_space");
                SuzukiConfig cfg;
                cfg.u = 7.0 / 8.0;
                auto rep = verify_suzuki(s, make_self_map("plane_contraction"), cfg);
                ok = rep.holds && rep.implications_checked > 0;
                observed = ok ? expected : "violated";
            });

        add("plane-orbit", "(7,9) reaches the unique fixed point (3,3) in two productive steps",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "(3,3) after 2 applications; unique by scan";
                GThetaSpace s = make_catalog_space("finite_plane_space");
                SelfMap T = make_self_map("plane_contraction");
                auto res = iterate_fixed_point(s, T, Point(Vec2{7, 9}), 1e-10, 50);
                int fixed_count = 0;
                for (std::size_t i = 0; i < s.carrier.size(); ++i) {
                    if (T.apply(s.carrier.at(i)) == s.carrier.at(i)) ++fixed_count;
                }
                ok = res.converged && res.fixed_point == Point(Vec2{3, 3}) &&
                     res.iterations == 2 && fixed_count == 1;
                observed = ok ? expected : "orbit mismatch";
            });

        add("plane-premise-unsolvable",
            "on the extended carrier the premise has no coefficient over a 100-point grid",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "0 solvable coefficients";
                GThetaSpace s = make_catalog_space("finite_plane_space",
                                                   nlohmann::json{{"extended", true}});
                auto rep = premise_solvable(s, make_self_map("plane_extended"),
                                            Point(Vec2{7, 9}), Point(Vec2{9, 7}),
                                            default_t_grid(), 100);
                ok = rep.solvable_r.empty() && rep.grid_points == 100;
                observed = std::to_string(rep.solvable_r.size()) + " solvable coefficients";
            });

        add("contraction-step-decay", "one map application contracts step distances by 7/8",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "holds for every start and grid t";
                GThetaSpace s = make_catalog_space("finite_plane_space");
                SelfMap T = make_self_map("plane_contraction");
                ok = true;
                for (std::size_t i = 0; i < s.carrier.size(); ++i) {
                    Point x = s.carrier.at(i), tx = T.apply(x), ttx = T.apply(tx);
                    for (double t : default_t_grid()) {
                        if (!(eval_metric(s, tx, ttx, t) <=
                              (7.0 / 8.0) * eval_metric(s, x, tx, t) + 1e-9)) {
                            ok = false;
                        }
                    }
                }
                observed = ok ? expected : "violated";
            });

        add("m-value-enumeration", "comparison maximum at ((7,9),(3,3)), t = 1",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "52";
                GThetaSpace s = make_catalog_space("finite_plane_space");
                double got = m_value(s, make_self_map("plane_contraction"),
                                     Point(Vec2{7, 9}), Point(Vec2{3, 3}), 1.0);
                observed = fmt(got);
                ok = got == 52.0;
            });

        add("rl-constant", "fractional integral of 1 at order 3/2 hits 1/Gamma(5/2)",
            [](std::string& expected, std::string& observed, bool& ok) {
                double exact = 1.0 / std::tgamma(2.5);
                expected = fmt(exact);
                GridFunction one(2000);
                for (std::size_t i = 0; i <= 2000; ++i) one[i] = 1.0;
                double got = rl_integral(one, 1.5, 1.0);
                observed = fmt(got);
                ok = std::abs(got - exact) <= 1e-6 * exact;
            });

        add("rl-order", "power-law identity converges at second order under refinement",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "order >= 2 on each halving";
                double exact = std::tgamma(3.0) / std::tgamma(4.5);
                std::vector<double> errs;
                for (std::size_t n : {125u, 250u, 500u, 1000u}) {
                    GridFunction sq(n);
                    for (std::size_t i = 0; i <= n; ++i) sq[i] = sq.node(i) * sq.node(i);
                    errs.push_back(std::abs(rl_integral(sq, 1.5, 1.0) - exact));
                }
                ok = true;
                std::ostringstream os;
                for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
                    double order = std::log2(errs[i] / errs[i + 1]);
                    os << fmt(order) << " ";
                    ok = ok && order >= 1.9;
                }
                observed = os.str();
            });

        add("fde-operator-anchor", "the integral operator pins node zero exactly",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "H(xi)(0) == 0";
                FdeProblem p;
                p.eta = 1.5;
                NamedRhs rhs = make_rhs("linear:lambda=0.2,c=tau");
                p.g = rhs.g;
                p.lipschitz_L = rhs.lipschitz_L;
                p.n = 200;
                Rng rng(11);
                ok = true;
                for (int k = 0; k < 5; ++k) {
                    GridFunction xi(200);
                    for (std::size_t i = 0; i <= 200; ++i) xi[i] = rng.uniform(-5.0, 5.0);
                    if (apply_H(p, xi)[0] != 0.0) ok = false;
                }
                observed = ok ? expected : "node zero drifted";
            });

        add("fde-gate", "contraction gate: accepts 0.2-slope, rejects 0.5-slope",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "r = 0.6018 open, r = 1.5045 rejected";
                FdeProblem p;
                p.eta = 1.5;
                NamedRhs ok_rhs = make_rhs("linear:lambda=0.2,c=tau");
                p.g = ok_rhs.g;
                p.lipschitz_L = ok_rhs.lipschitz_L;
                p.n = 64;
                auto pass_rep = verify_lipschitz(p, 1000, 42);
                NamedRhs hot = make_rhs("linear:lambda=0.5,c=tau");
                p.g = hot.g;
                p.lipschitz_L = hot.lipschitz_L;
                auto fail_rep = verify_lipschitz(p, 1000, 42);
                bool rejected = false;
                try {
                    solve_fde(p);
                } catch (const ConfigError&) {
                    rejected = true;
                }
                ok = pass_rep.gate_open && std::abs(pass_rep.implied_r - 0.6018) <= 5e-4 &&
                     !fail_rep.gate_open && std::abs(fail_rep.implied_r - 1.5045) <= 5e-4 &&
                     rejected;
                observed = "r = " + fmt(pass_rep.implied_r) + (pass_rep.gate_open ? " open" : "") +
                           ", r = " + fmt(fail_rep.implied_r) + (rejected ? " rejected" : "");
            });

        add("fde-manufactured", "growth-model style problem solved by contraction iteration",
            [](std::string& expected, std::string& observed, bool& ok) {
                expected = "converged, residual <= 1e-10, anchored, boundary gap <= 1e-3";
                FdeProblem p;
                p.eta = 1.5;
                NamedRhs rhs = make_rhs("linear:lambda=0.2,c=tau");
                p.g = rhs.g;
                p.lipschitz_L = rhs.lipschitz_L;
                p.n = 800;
                p.tol = 1e-10;
                p.max_iter = 400;
                FdeSolution sol = solve_fde(p);
                ok = sol.picard.converged && sol.residual_sup <= 1e-10 &&
                     sol.solution[0] == 0.0 && sol.boundary_gap <= 1e-3 &&
                     sol.picard.observed_ratio && *sol.picard.observed_ratio <= 0.66;
                observed = ok ? expected
                              : "residual " + fmt(sol.residual_sup) + ", gap " +
                                    fmt(sol.boundary_gap);
            });

        return v;
    }();
    return cases;
}

}  // namespace detail

/// Re-runs every cataloged worked example and counterexample; one row per
/// case id, each id appearing exactly once.
inline RunOutcome run_repro_all(std::uint64_t) {
    RunOutcome out;
    out.report = ojson{{"cases", ojson::array()}};
    int passed = 0, failed = 0;
    for (const auto& c : detail::repro_cases()) {
        std::string expected, observed;
        bool ok = false;
        try {
            c.run(expected, observed, ok);
        } catch (const std::exception& e) {
            observed = std::string("exception: ") + e.what();
            ok = false;
        }
        out.report["cases"].push_back(ojson{{"id", c.id},
                                            {"description", c.description},
                                            {"expected", expected},
                                            {"observed", observed},
                                            {"verdict", ok ? "pass" : "fail"}});
        out.human += detail::verdict_line(c.id, ok) + "\n";
        (ok ? passed : failed)++;
    }
    out.report["passed"] = passed;
    out.report["failed"] = failed;
    out.exit_code = failed == 0 ? 0 : 1;
    return out;
}

}  // namespace gtheta
