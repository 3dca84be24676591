#include <gtest/gtest.h>

#include <cmath>

#include "gtheta/suzuki.hpp"

using namespace gtheta;
using nlohmann::json;

namespace {

Point pt(double x, double y) { return Point(Vec2{x, y}); }

TEST(Psi, BranchValuesAndContinuity) {
    EXPECT_DOUBLE_EQ(psi(0.0), 1.0);
    double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // adjacent branches agree at both breakpoints
    EXPECT_NEAR(psi(golden), 1.0, 1e-12);
    EXPECT_NEAR((1.0 - golden) / (golden * golden), 1.0, 1e-12);
    EXPECT_NEAR(psi(inv_sqrt2), 2.0 - std::sqrt(2.0), 1e-12);
    EXPECT_NEAR((1.0 - inv_sqrt2) / (inv_sqrt2 * inv_sqrt2), 2.0 - std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(1.0 / (inv_sqrt2 + 1.0), 2.0 - std::sqrt(2.0), 1e-12);
}

TEST(Psi, RangeStaysAboveHalf) {
    for (int i = 0; i < 1000; ++i) {
        double u = static_cast<double>(i) / 1000.0;
        double v = psi(u);
        EXPECT_GT(v, 0.5);
        EXPECT_LE(v, 1.0);
    }
}

TEST(Psi, DomainErrors) {
    EXPECT_THROW(psi(-0.1), std::domain_error);
    EXPECT_THROW(psi(1.0), std::domain_error);
    EXPECT_THROW(psi(1.5), std::domain_error);
}

TEST(MValue, PlaneWorkedValues) {
    GThetaSpace s = make_catalog_space("finite_plane_space");
    SelfMap T = make_self_map("plane_contraction");
    // terms at x=(7,9), y=(3,3), t=1: 52, 36, 0, (52+16)/2 = 34
    EXPECT_DOUBLE_EQ(m_value(s, T, pt(7, 9), pt(3, 3), 1.0), 52.0);
    EXPECT_DOUBLE_EQ(m_value(s, T, pt(3, 3), pt(3, 3), 1.0), 0.0);
}

TEST(MValue, DominatesDistance) {
    GThetaSpace s = make_catalog_space("finite_plane_space");
    SelfMap T = make_self_map("plane_contraction");
    for (std::size_t i = 0; i < s.carrier.size(); ++i) {
        for (std::size_t j = 0; j < s.carrier.size(); ++j) {
            for (double t : {0.25, 1.0, 8.0}) {
                Point x = s.carrier.at(i), y = s.carrier.at(j);
                EXPECT_GE(m_value(s, T, x, y, t), eval_metric(s, x, y, t));
            }
        }
    }
}

TEST(VerifySuzuki, PlaneHoldsAtSevenEighthsForAllVariants) {
    GThetaSpace s = make_catalog_space("finite_plane_space");
    SelfMap T = make_self_map("plane_contraction");
    for (auto variant : {SuzukiVariant::general, SuzukiVariant::banach, SuzukiVariant::kannan}) {
        SuzukiConfig cfg;
        cfg.u = 7.0 / 8.0;
        cfg.variant = variant;
        auto report = verify_suzuki(s, T, cfg);
        EXPECT_TRUE(report.holds) << to_cstring(variant);
        EXPECT_GT(report.implications_checked, 0);
    }
}

TEST(VerifySuzuki, BanachPassImpliesGeneralPass) {
    // the comparison maximum dominates the plain distance, so a Banach pass
    // forces a general pass at the same coefficient
    GThetaSpace s = make_catalog_space("finite_plane_space");
    SelfMap T = make_self_map("plane_contraction");
    for (double u : {0.1, 0.3, 0.5, 0.7, 7.0 / 8.0, 0.95}) {
        SuzukiConfig banach_cfg;
        banach_cfg.u = u;
        banach_cfg.variant = SuzukiVariant::banach;
        SuzukiConfig general_cfg = banach_cfg;
        general_cfg.variant = SuzukiVariant::general;
        bool banach = verify_suzuki(s, T, banach_cfg).holds;
        bool general = verify_suzuki(s, T, general_cfg).holds;
        if (banach) EXPECT_TRUE(general) << "u = " << u;
    }
}

TEST(VerifySuzuki, LiteralPremiseFormAlsoHolds) {
    GThetaSpace s = make_catalog_space("finite_plane_space");
    SelfMap T = make_self_map("plane_contraction");
    SuzukiConfig cfg;
    cfg.u = 7.0 / 8.0;
    cfg.premise_form = PremiseForm::x_Ty;
    EXPECT_TRUE(verify_suzuki(s, T, cfg).holds);
}

TEST(VerifySuzuki, TooSmallUIsViolated) {
    GThetaSpace s = make_catalog_space("finite_plane_space");
    SelfMap T = make_self_map("plane_contraction");
    SuzukiConfig cfg;
    cfg.u = 0.05;  // (7,9) -> (7,3) moves distance 16 against M = 52 at best
    auto report = verify_suzuki(s, T, cfg);
    ASSERT_FALSE(report.holds);
    ASSERT_TRUE(report.violation.has_value());
    // replay the violation through the metric
    Point tx = T.apply(report.violation->x), ty = T.apply(report.violation->y);
    EXPECT_EQ(eval_metric(s, tx, ty, report.violation->s), report.violation->lhs);
}

TEST(VerifySuzuki, ConstantMapAtZeroCoefficient) {
    GThetaSpace s = make_catalog_space("finite_plane_space");
    SelfMap to_fixed{"collapse", [](const Point&) { return Point(Vec2{3, 3}); }};
    SuzukiConfig cfg;
    cfg.u = 0.0;
    EXPECT_TRUE(verify_suzuki(s, to_fixed, cfg).holds);  // consequent 0 <= 0 throughout
}

TEST(VerifySuzuki, VacuousSamplesAreCounted) {
    GThetaSpace s = make_catalog_space("finite_plane_space", json{{"extended", true}});
    SelfMap S = make_self_map("plane_extended");
    SuzukiConfig cfg;
    cfg.u = 7.0 / 8.0;
    auto report = verify_suzuki(s, S, cfg);
    EXPECT_GT(report.vacuous, 0);
}

TEST(PremiseSolvable, ExtendedPairHasNoSolution) {
    GThetaSpace s = make_catalog_space("finite_plane_space", json{{"extended", true}});
    SelfMap S = make_self_map("plane_extended");
    auto report = premise_solvable(s, S, pt(7, 9), pt(9, 7), default_t_grid(), 100);
    EXPECT_EQ(report.grid_points, 100);
    EXPECT_TRUE(report.solvable_r.empty());  // psi(r) > 1/2 can never fit 36 under 8
}

TEST(PremiseSolvable, FixedPointCenterSolvesEverywhere) {
    GThetaSpace s = make_catalog_space("finite_plane_space");
    SelfMap T = make_self_map("plane_contraction");
    auto report = premise_solvable(s, T, pt(3, 3), pt(7, 9), default_t_grid(), 100);
    EXPECT_EQ(static_cast<int>(report.solvable_r.size()), 100);
}

TEST(IterateFixedPoint, PlaneOrbitReachesTheFixedPoint) {
    GThetaSpace s = make_catalog_space("finite_plane_space");
    SelfMap T = make_self_map("plane_contraction");
    auto result = iterate_fixed_point(s, T, pt(7, 9), 1e-10, 50);
    EXPECT_TRUE(result.converged);
    EXPECT_TRUE(result.fixed_point == pt(3, 3));
    EXPECT_EQ(result.iterations, 2);  // (7,9) -> (7,3) -> (3,3)
    ASSERT_TRUE(result.observed_ratio.has_value());
    EXPECT_LE(*result.observed_ratio, 7.0 / 8.0);
    EXPECT_NEAR(*result.observed_ratio, 16.0 / 36.0, 1e-12);
}

TEST(IterateFixedPoint, EveryStartConvergesWithinThreeApplications) {
    GThetaSpace s = make_catalog_space("finite_plane_space");
    SelfMap T = make_self_map("plane_contraction");
    for (std::size_t i = 0; i < s.carrier.size(); ++i) {
        auto result = iterate_fixed_point(s, T, s.carrier.at(i), 1e-10, 50);
        EXPECT_TRUE(result.converged);
        EXPECT_TRUE(result.fixed_point == pt(3, 3));
        EXPECT_LE(result.iterations, 3);
    }
}

TEST(IterateFixedPoint, AlreadyFixedStartTakesZeroIterations) {
    GThetaSpace s = make_catalog_space("finite_plane_space");
    SelfMap T = make_self_map("plane_contraction");
    auto result = iterate_fixed_point(s, T, pt(3, 3), 1e-10, 50);
    EXPECT_TRUE(result.converged);
    EXPECT_EQ(result.iterations, 0);
}

TEST(IterateFixedPoint, UniqueFixedPointByExhaustiveScan) {
    GThetaSpace s = make_catalog_space("finite_plane_space");
    SelfMap T = make_self_map("plane_contraction");
    int fixed_count = 0;
    for (std::size_t i = 0; i < s.carrier.size(); ++i) {
        Point x = s.carrier.at(i);
        if (T.apply(x) == x) {
            ++fixed_count;
            EXPECT_TRUE(x == pt(3, 3));
        }
    }
    EXPECT_EQ(fixed_count, 1);
}

TEST(IterateFixedPoint, NonConvergenceIsAResultNotAnException) {
    GThetaSpace s = make_catalog_space("finite_plane_space");
    SelfMap swap2{"swap", [](const Point& p) {
                      if (p.get<Vec2>() == Vec2{7, 3}) return pt(3, 7);
                      if (p.get<Vec2>() == Vec2{3, 7}) return pt(7, 3);
                      return pt(3, 3);
                  }};
    auto result = iterate_fixed_point(s, swap2, pt(7, 3), 1e-10, 10);
    EXPECT_FALSE(result.converged);
    EXPECT_EQ(result.iterations, 10);
}

TEST(IterateFixedPoint, BadArgumentsRejected) {
    GThetaSpace s = make_catalog_space("finite_plane_space");
    SelfMap T = make_self_map("plane_contraction");
    EXPECT_THROW(iterate_fixed_point(s, T, pt(3, 3), 0.0, 10), std::domain_error);
    EXPECT_THROW(iterate_fixed_point(s, T, pt(3, 3), 1e-9, 0), std::domain_error);
}

TEST(EstimateContraction, SyntheticGeometricTrace) {
    FixedPointResult trace;
    trace.t_grid = {1.0};
    double d = 1.0;
    for (int k = 0; k < 30; ++k) {
        trace.step_distances.push_back({k + 1, {d}});
        d *= 0.37;
    }
    auto ratio = estimate_contraction(trace);
    ASSERT_TRUE(ratio.has_value());
    EXPECT_NEAR(*ratio, 0.37, 1e-12);
}

TEST(EstimateContraction, ImmediateConvergenceHasNoRatio) {
    FixedPointResult trace;
    trace.t_grid = {1.0};
    trace.step_distances.push_back({1, {0.0}});
    trace.step_distances.push_back({2, {0.0}});
    EXPECT_FALSE(estimate_contraction(trace).has_value());
}

TEST(ProofStepInequality, HoldsOnThePlaneExample) {
    // distance(Tx, T^2 x, t) <= u * distance(x, Tx, t) + 1e-9 with u = 7/8
    GThetaSpace s = make_catalog_space("finite_plane_space");
    SelfMap T = make_self_map("plane_contraction");
    for (std::size_t i = 0; i < s.carrier.size(); ++i) {
        Point x = s.carrier.at(i);
        Point tx = T.apply(x);
        Point ttx = T.apply(tx);
        for (double t : default_t_grid()) {
            EXPECT_LE(eval_metric(s, tx, ttx, t),
                      (7.0 / 8.0) * eval_metric(s, x, tx, t) + 1e-9);
        }
    }
}

TEST(SelfMapCatalog, UnknownNameRejected) {
    EXPECT_THROW(make_self_map("nope"), ConfigError);
}

}  // namespace
