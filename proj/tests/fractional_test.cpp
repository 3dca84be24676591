#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "gtheta/fractional.hpp"

using namespace gtheta;

namespace {

GridFunction sample_grid(std::size_t n, const std::function<double(double)>& f) {
    GridFunction g(n);
    for (std::size_t i = 0; i <= n; ++i) g[i] = f(g.node(i));
    return g;
}

// Independent quadrature route for eta = 3/2: substituting u = t - s and
// then u = v*v turns the weakly singular integral into a smooth one,
//   I^{3/2} f (t) = (2 / Gamma(3/2)) * int_0^sqrt(t) v^2 f(t - v^2) dv,
// handled by composite Simpson.
double oracle_rl_15(const std::function<double(double)>& f, double t, int panels = 4096) {
    double b = std::sqrt(t);
    double h = b / (2 * panels);
    auto integrand = [&](double v) { return v * v * f(t - v * v); };
    double sum = integrand(0.0) + integrand(b);
    for (int i = 1; i < 2 * panels; ++i) sum += integrand(i * h) * (i % 2 ? 4.0 : 2.0);
    return 2.0 * (sum * h / 3.0) / std::tgamma(1.5);
}

double simpson01(const std::function<double(double)>& f, int panels = 512) {
    double h = 1.0 / (2 * panels);
    double sum = f(0.0) + f(1.0);
    for (int i = 1; i < 2 * panels; ++i) sum += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// Test-only Picard solver running entirely on the Simpson route; shares no
// quadrature code with apply_H.
GridFunction oracle_solve_15(const FdeProblem& p, int iters) {
    GridFunction f(p.n);
    for (int k = 0; k < iters; ++k) {
        auto g_of = [&](double s) { return p.g(s, f.value_at(s)); };
        std::vector<double> inner(p.n + 1, 0.0);
        for (std::size_t i = 1; i <= p.n; ++i) inner[i] = oracle_rl_15(g_of, f.node(i), 256);
        GridFunction inner_grid = GridFunction::from_values(inner);
        double outer = simpson01([&](double s) { return inner_grid.value_at(s); }, 512);
        GridFunction next(p.n);
        for (std::size_t i = 0; i <= p.n; ++i) next[i] = inner[i] + 2.0 * next.node(i) * outer;
        f = next;
    }
    return f;
}

TEST(RlIntegral, ZeroFunctionIsZero) {
    GridFunction z(64);
    for (double t : {0.0, 0.1, 0.5, 1.0}) EXPECT_DOUBLE_EQ(rl_integral(z, 1.5, t), 0.0);
}

TEST(RlIntegral, ConstantOneClosedForm) {
    // I^eta 1 = t^eta / Gamma(eta + 1)
    GridFunction one = sample_grid(2000, [](double) { return 1.0; });
    for (double t : {0.25, 0.5, 1.0}) {
        double expected = std::pow(t, 1.5) / std::tgamma(2.5);
        EXPECT_NEAR(rl_integral(one, 1.5, t), expected, 1e-12 * expected);
    }
    double expected1 = 1.0 / std::tgamma(2.5);
    EXPECT_NEAR(rl_integral(one, 1.5, 1.0), expected1, 1e-6 * expected1);
}

TEST(RlIntegral, PowerLawIdentity) {
    // I^eta s^m = Gamma(m+1)/Gamma(m+eta+1) t^{m+eta}
    GridFunction sq = sample_grid(512, [](double s) { return s * s; });
    for (double t : {0.5, 1.0}) {
        double expected = (std::tgamma(3.0) / std::tgamma(4.5)) * std::pow(t, 3.5);
        EXPECT_NEAR(rl_integral(sq, 1.5, t), expected, 2e-5 * expected);
    }
}

TEST(RlIntegral, QuadratureOrderAtLeastTwo) {
    double exact = std::tgamma(3.0) / std::tgamma(4.5);
    std::vector<double> errors;
    for (std::size_t n : {125u, 250u, 500u, 1000u}) {
        GridFunction sq = sample_grid(n, [](double s) { return s * s; });
        errors.push_back(std::abs(rl_integral(sq, 1.5, 1.0) - exact));
    }
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        double order = std::log2(errors[i] / errors[i + 1]);
        EXPECT_GE(order, 1.9) << "refinement step " << i;
    }
}

TEST(RlIntegral, MatchesIndependentQuadratureOracle) {
    auto fn = [](double s) { return std::sin(3.0 * s) + s; };
    GridFunction g = sample_grid(1000, fn);
    for (double t : {0.3, 0.7, 1.0}) {
        EXPECT_NEAR(rl_integral(g, 1.5, t), oracle_rl_15(fn, t), 5e-6);
    }
}

TEST(RlIntegral, NodePathAgreesWithGeneralPath) {
    GridFunction g = sample_grid(257, [](double s) { return std::exp(-s) * std::cos(5 * s); });
    auto nodes = detail::rl_integral_nodes(g, 1.7);
    for (std::size_t i = 0; i <= g.segments(); i += 16) {
        EXPECT_NEAR(nodes[i], rl_integral(g, 1.7, g.node(i)), 1e-12);
    }
}

TEST(RlIntegral, DomainErrors) {
    GridFunction g(8);
    EXPECT_THROW(rl_integral(g, 0.0, 0.5), std::domain_error);
    EXPECT_THROW(rl_integral(g, -1.0, 0.5), std::domain_error);
    EXPECT_THROW(rl_integral(g, 1.5, 1.5), std::domain_error);
    EXPECT_THROW(rl_integral(g, 1.5, -0.1), std::domain_error);
}

FdeProblem manufactured(std::size_t n, double lambda = 0.2) {
    FdeProblem p;
    p.eta = 1.5;
    NamedRhs rhs = make_rhs("linear:lambda=" + std::to_string(lambda) + ",c=tau");
    p.g = rhs.g;
    p.lipschitz_L = rhs.lipschitz_L;
    p.n = n;
    p.tol = 1e-10;
    p.max_iter = 400;
    return p;
}

TEST(ApplyH, ZeroRhsGivesZero) {
    FdeProblem p = manufactured(64);
    p.g = [](double, double) { return 0.0; };
    p.lipschitz_L = 0.0;
    GridFunction xi = sample_grid(64, [](double s) { return std::sin(7 * s); });
    GridFunction out = apply_H(p, xi);
    for (std::size_t i = 0; i <= 64; ++i) EXPECT_DOUBLE_EQ(out[i], 0.0);
}

TEST(ApplyH, NodeZeroIsExactlyZero) {
    FdeProblem p = manufactured(128);
    Rng rng(5);
    for (int k = 0; k < 10; ++k) {
        GridFunction xi(128);
        for (std::size_t i = 0; i <= 128; ++i) xi[i] = rng.uniform(-3.0, 3.0);
        EXPECT_EQ(apply_H(p, xi)[0], 0.0);
    }
}

TEST(ApplyH, ConstantRhsClosedForm) {
    // g == 1: H(t) = t^1.5/Gamma(2.5) + 2 t / (2.5 Gamma(2.5))
    FdeProblem p = manufactured(500);
    p.g = [](double, double) { return 1.0; };
    p.lipschitz_L = 0.0;
    GridFunction xi(500);
    GridFunction out = apply_H(p, xi);
    double g25 = std::tgamma(2.5);
    for (std::size_t i = 0; i <= 500; ++i) {
        double t = out.node(i);
        double expected = std::pow(t, 1.5) / g25 + 2.0 * t / (2.5 * g25);
        EXPECT_NEAR(out[i], expected, 1e-6);
    }
}

TEST(ApplyH, NonFiniteRhsReportsTheNode) {
    FdeProblem p = manufactured(32);
    p.g = [](double tau, double) { return tau > 0.5 ? std::nan("") : 0.0; };
    GridFunction xi(32);
    try {
        apply_H(p, xi);
        FAIL() << "expected EvaluationError";
    } catch (const EvaluationError& e) {
        EXPECT_NE(std::string(e.what()).find("node"), std::string::npos);
    }
}

TEST(ApplyH, LinearRhsIsAdditiveHomogeneous) {
    FdeProblem p = manufactured(200);
    p.g = [](double, double f) { return 0.4 * f; };
    p.lipschitz_L = 0.4;
    Rng rng(9);
    for (int k = 0; k < 5; ++k) {
        GridFunction a(200), b(200);
        for (std::size_t i = 0; i <= 200; ++i) {
            a[i] = rng.uniform(-2.0, 2.0);
            b[i] = rng.uniform(-2.0, 2.0);
        }
        double ca = rng.uniform(-3.0, 3.0), cb = rng.uniform(-3.0, 3.0);
        GridFunction mix(200);
        for (std::size_t i = 0; i <= 200; ++i) mix[i] = ca * a[i] + cb * b[i];
        GridFunction ha = apply_H(p, a), hb = apply_H(p, b), hmix = apply_H(p, mix);
        for (std::size_t i = 0; i <= 200; ++i) {
            EXPECT_NEAR(hmix[i], ca * ha[i] + cb * hb[i], 1e-9);
        }
    }
}

TEST(VerifyLipschitz, ManufacturedGateOpens) {
    FdeProblem p = manufactured(64);
    auto report = verify_lipschitz(p, 2000, 42);
    EXPECT_TRUE(report.pass);
    EXPECT_NEAR(report.implied_r, 0.8 / std::tgamma(2.5), 1e-12);
    EXPECT_NEAR(report.implied_r, 0.6018, 5e-5);
    EXPECT_TRUE(report.gate_open);
}

TEST(VerifyLipschitz, ConstantRhsHasZeroConstant) {
    FdeProblem p = manufactured(64);
    NamedRhs rhs = make_rhs("constant:c=3.5");
    p.g = rhs.g;
    p.lipschitz_L = rhs.lipschitz_L;
    auto report = verify_lipschitz(p, 500, 1);
    EXPECT_TRUE(report.pass);
    EXPECT_DOUBLE_EQ(report.implied_r, 0.0);
}

TEST(VerifyLipschitz, HalfGateRejects) {
    FdeProblem p = manufactured(64, 0.5);
    auto report = verify_lipschitz(p, 500, 1);
    EXPECT_TRUE(report.pass);  // g really is 0.5-Lipschitz
    EXPECT_NEAR(report.implied_r, 2.0 / std::tgamma(2.5), 1e-12);
    EXPECT_NEAR(report.implied_r, 1.5045, 5e-4);
    EXPECT_FALSE(report.gate_open);
}

TEST(VerifyLipschitz, UnderstatedConstantIsCaught) {
    FdeProblem p = manufactured(64);
    p.lipschitz_L = 0.1;  // the rhs actually moves at rate 0.2
    auto report = verify_lipschitz(p, 5000, 42);
    ASSERT_FALSE(report.pass);
    ASSERT_TRUE(report.violation.has_value());
    double lhs = std::abs(p.g(report.violation->params.at("t"), report.violation->params.at("chi1")) -
                          p.g(report.violation->params.at("t"), report.violation->params.at("chi2")));
    EXPECT_EQ(lhs, report.violation->lhs);
}

TEST(SolveFde, ZeroRhsFixedAtZero) {
    FdeProblem p = manufactured(128);
    NamedRhs rhs = make_rhs("zero");
    p.g = rhs.g;
    p.lipschitz_L = 0.0;
    FdeSolution sol = solve_fde(p);
    EXPECT_TRUE(sol.picard.converged);
    EXPECT_EQ(sol.picard.iterations, 0);
    for (std::size_t i = 0; i <= 128; ++i) EXPECT_DOUBLE_EQ(sol.solution[i], 0.0);
    EXPECT_DOUBLE_EQ(sol.residual_sup, 0.0);
}

TEST(SolveFde, ManufacturedProblemConverges) {
    FdeSolution sol = solve_fde(manufactured(500));
    EXPECT_TRUE(sol.picard.converged);
    EXPECT_LE(sol.residual_sup, 1e-10);
    EXPECT_EQ(sol.solution[0], 0.0);  // exactly
    ASSERT_TRUE(sol.picard.observed_ratio.has_value());
    EXPECT_LE(*sol.picard.observed_ratio, sol.contraction_r + 0.05);
    EXPECT_LE(sol.boundary_gap, 1e-3);
}

TEST(SolveFde, MatchesIndependentOracleSolver) {
    FdeProblem p = manufactured(400);
    FdeSolution sol = solve_fde(p);
    GridFunction oracle = oracle_solve_15(p, 30);
    double sup = 0.0;
    for (std::size_t i = 0; i <= p.n; ++i) {
        sup = std::max(sup, std::abs(sol.solution[i] - oracle[i]));
    }
    EXPECT_LE(sup, 5e-5);
}

TEST(SolveFde, GridRefinementWithinFourTimesDefect) {
    FdeProblem coarse = manufactured(250);
    FdeProblem fine = manufactured(500);
    FdeSolution sc = solve_fde(coarse);
    FdeSolution sf = solve_fde(fine);
    // inject the coarse solution into the fine grid by linear interpolation
    GridFunction injected(500);
    for (std::size_t i = 0; i <= 500; ++i) injected[i] = sc.solution.value_at(injected.node(i));
    double defect = apply_H(fine, injected).sup_diff(injected);
    double disagreement = 0.0;
    for (std::size_t i = 0; i <= 250; ++i) {
        disagreement = std::max(disagreement, std::abs(sc.solution[i] - sf.solution[2 * i]));
    }
    EXPECT_LE(disagreement, 4.0 * defect);
}

TEST(SolveFde, GateRejectsBeforeIterating) {
    EXPECT_THROW(solve_fde(manufactured(64, 0.5)), ConfigError);
}

TEST(SolveFde, NonConvergenceWithinBudgetIsReported) {
    FdeProblem p = manufactured(64, 0.3);  // r ~ 0.90, slow
    p.max_iter = 3;
    FdeSolution sol = solve_fde(p);
    EXPECT_FALSE(sol.picard.converged);
}

TEST(FdeProblemValidation, RejectsBadParameters) {
    FdeProblem p = manufactured(64);
    p.eta = 1.0;
    EXPECT_THROW(validate(p), ConfigError);
    p.eta = 2.5;
    EXPECT_THROW(validate(p), ConfigError);
    p = manufactured(64);
    p.n = 1;
    EXPECT_THROW(validate(p), ConfigError);
    p = manufactured(64);
    p.tol = 0.0;
    EXPECT_THROW(validate(p), ConfigError);
}

TEST(MakeRhs, CatalogParsing) {
    NamedRhs zero = make_rhs("zero");
    EXPECT_DOUBLE_EQ(zero.g(0.3, 7.0), 0.0);
    NamedRhs c = make_rhs("constant:c=2.5");
    EXPECT_DOUBLE_EQ(c.g(0.9, -4.0), 2.5);
    EXPECT_DOUBLE_EQ(c.lipschitz_L, 0.0);
    NamedRhs lin = make_rhs("linear:lambda=0.2,c=tau");
    EXPECT_DOUBLE_EQ(lin.g(0.25, 2.0), 0.2 * 2.0 + 0.25);
    EXPECT_DOUBLE_EQ(lin.lipschitz_L, 0.2);
    NamedRhs poly = make_rhs("linear:lambda=-0.3,c=poly(1;0;2)");
    EXPECT_DOUBLE_EQ(poly.g(0.5, 1.0), -0.3 + 1.0 + 2.0 * 0.25);
    EXPECT_DOUBLE_EQ(poly.lipschitz_L, 0.3);
    EXPECT_THROW(make_rhs("linear:c=tau"), ConfigError);
    EXPECT_THROW(make_rhs("mystery:x=1"), ConfigError);
}

}  // namespace
