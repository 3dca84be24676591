#include <gtest/gtest.h>

#include "gtheta/axioms.hpp"

using namespace gtheta;
using nlohmann::json;

namespace {

Point pt(double x, double y) { return Point(Vec2{x, y}); }

void expect_replay_exact(const GThetaSpace& space, const AxiomReport& report,
                         const std::vector<double>& grid = default_t_grid()) {
    ASSERT_TRUE(report.witness.has_value()) << report.axiom;
    auto replayed = replay_space_witness(space, report, grid);
    ASSERT_TRUE(replayed.has_value()) << report.axiom;
    EXPECT_EQ(replayed->first, report.witness->lhs) << report.axiom;
    EXPECT_EQ(replayed->second, report.witness->rhs) << report.axiom;
    EXPECT_TRUE(violates(replayed->first, replayed->second)) << report.axiom;
}

TEST(VerifyGTheta, CatalogSpacesPassUnlessDocumented) {
    for (const auto& name : space_catalog_names()) {
        GThetaSpace s = make_catalog_space(name);
        if (s.known_violator("Ptheta2")) continue;
        auto reports = verify_gtheta(s, 10000, 42);
        for (const auto& r : reports) {
            EXPECT_EQ(r.verdict, Verdict::pass)
                << name << " failed " << r.axiom
                << (r.witness ? " lhs=" + std::to_string(r.witness->lhs) +
                                    " rhs=" + std::to_string(r.witness->rhs)
                              : "");
        }
    }
}

TEST(VerifyGTheta, ExpMaxAtKTwoPasses) {
    GThetaSpace s = make_catalog_space("exp_max_space", json{{"k", 2.0}});
    EXPECT_TRUE(all_pass(verify_gtheta(s, 10000, 42)));
}

TEST(VerifyGTheta, ExpParametricFailsHonestly) {
    // the documented non-example also misses the relaxed inequality for its
    // attached (ln, 0) pair: large parameter sums blow past any fixed slack
    GThetaSpace s = make_catalog_space("exp_parametric_space");
    ASSERT_TRUE(s.known_violator("Ptheta2"));
    auto reports = verify_gtheta(s, 10000, 42);
    const AxiomReport* p2 = find_report(reports, "Ptheta2");
    ASSERT_NE(p2, nullptr);
    ASSERT_EQ(p2->verdict, Verdict::fail);
    expect_replay_exact(s, *p2);
}

TEST(VerifyGTheta, CorruptedStepSpaceFailsRelaxedTriangle) {
    GThetaSpace s = make_catalog_space("step_space");
    s.control.alpha = -1.0;  // deliberately broken slack
    auto reports = verify_gtheta(s, 10000, 42);
    const AxiomReport* p2 = find_report(reports, "Ptheta2");
    ASSERT_NE(p2, nullptr);
    ASSERT_EQ(p2->verdict, Verdict::fail);
    expect_replay_exact(s, *p2);
}

TEST(VerifyGTheta, DeterministicGivenSeed) {
    GThetaSpace s = make_catalog_space("step_space");
    s.control.alpha = -1.0;
    auto a = verify_gtheta(s, 3000, 7);
    auto b = verify_gtheta(s, 3000, 7);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].verdict, b[i].verdict);
        ASSERT_EQ(a[i].witness.has_value(), b[i].witness.has_value());
        if (a[i].witness) {
            EXPECT_EQ(a[i].witness->lhs, b[i].witness->lhs);
            EXPECT_EQ(a[i].witness->rhs, b[i].witness->rhs);
            EXPECT_EQ(a[i].witness->params, b[i].witness->params);
            ASSERT_EQ(a[i].witness->points.size(), b[i].witness->points.size());
            for (std::size_t j = 0; j < a[i].witness->points.size(); ++j) {
                EXPECT_TRUE(a[i].witness->points[j] == b[i].witness->points[j]);
            }
        }
    }
}

TEST(ParametricTriangle, StepSpacePasses) {
    GThetaSpace s = make_catalog_space("step_space");
    AxiomReport r = verify_parametric_triangle(s, 10000, 42);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(ParametricTriangle, ExpParametricFailsWithReplayableWitness) {
    GThetaSpace s = make_catalog_space("exp_parametric_space");
    AxiomReport r = verify_parametric_triangle(s, 10000, 42);
    ASSERT_EQ(r.verdict, Verdict::fail);
    expect_replay_exact(s, r);
}

TEST(ParametricTriangle, SupGridPasses) {
    GThetaSpace s = make_catalog_space("sup_grid_space", json{{"n", 8}});
    AxiomReport r = verify_parametric_triangle(s, 3000, 42);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(ParametricTriangle, ExpMaxPasses) {
    // max action with split parameters: the mediant bound keeps it valid
    GThetaSpace s = make_catalog_space("exp_max_space", json{{"k", 2.0}});
    AxiomReport r = verify_parametric_triangle(s, 3000, 42);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(ThetaParametric, StepSpaceFailsWithTheDocumentedWitness) {
    GThetaSpace s = make_catalog_space("step_space");
    AxiomReport r = verify_theta_parametric(s, 10000, 42);
    ASSERT_EQ(r.verdict, Verdict::fail);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_DOUBLE_EQ(r.witness->lhs, 100.0);
    EXPECT_DOUBLE_EQ(r.witness->rhs, 50.0);
    ASSERT_EQ(r.witness->points.size(), 3u);
    EXPECT_TRUE(r.witness->points[0] == pt(1, 0));
    EXPECT_TRUE(r.witness->points[1] == pt(0, 0.5));
    EXPECT_TRUE(r.witness->points[2] == pt(0.25, 0.125));
    EXPECT_DOUBLE_EQ(r.witness->params.at("t"), 1.0);
    expect_replay_exact(s, r);
}

TEST(ThetaParametric, ExpMaxFailsBetweenPoints) {
    // any z strictly between x and y beats the max of the two legs
    GThetaSpace s = make_catalog_space("exp_max_space", json{{"k", 1.0}});
    AxiomReport r = verify_theta_parametric(s, 10000, 42);
    ASSERT_EQ(r.verdict, Verdict::fail);
    expect_replay_exact(s, r);
}

TEST(ThetaParametric, SupGridPasses) {
    GThetaSpace s = make_catalog_space("sup_grid_space", json{{"n", 8}});
    AxiomReport r = verify_theta_parametric(s, 3000, 42);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(ThetaParametric, ExpParametricPassesSameParameterTriangle) {
    GThetaSpace s = make_catalog_space("exp_parametric_space");
    AxiomReport r = verify_theta_parametric(s, 3000, 42);
    EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(SeparationTriple, StepSpaceSeparatesTheThreeAxiomSystems) {
    GThetaSpace s = make_catalog_space("step_space");
    EXPECT_EQ(verify_parametric_triangle(s, 2000, 1).verdict, Verdict::pass);
    EXPECT_TRUE(all_pass(verify_gtheta(s, 2000, 1)));
    EXPECT_EQ(verify_theta_parametric(s, 2000, 1).verdict, Verdict::fail);
}

TEST(Witnesses, RandomlyFoundThetaWitnessShrinksToReadableScale) {
    GThetaSpace s = make_catalog_space("exp_max_space", json{{"k", 1.0}});
    AxiomReport r = verify_theta_parametric(s, 5000, 3);
    ASSERT_EQ(r.verdict, Verdict::fail);
    ASSERT_TRUE(r.witness.has_value());
    for (const auto& p : r.witness->points) {
        EXPECT_LT(std::abs(p.get<double>()), 200.0);
    }
    EXPECT_GT(r.witness->params.at("t"), 0.0);
}

}  // namespace
