#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "jumpimpact/errors.hpp"
#include "jumpimpact/oracles.hpp"
#include "jumpimpact/pide.hpp"
#include "jumpimpact/tridiagonal.hpp"

using namespace jumpimpact;

namespace {

ModelParams black_scholes() {
    ModelParams p;
    p.mu = CoefficientFunction::constant(0.05);
    p.sigma = CoefficientFunction::constant(0.2);
    p.r = CoefficientFunction::constant(0.05);
    return p;
}

ModelParams jumpy() {
    ModelParams p = black_scholes();
    p.a = 0.5;
    p.rho = 0.5;
    return p;
}

StrategyClosure self_consistent() {
    StrategyClosure c;
    c.mode = StrategyClosure::Mode::self_consistent;
    return c;
}

double sup_distance(const PriceSurface& x, const PriceSurface& y) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.f.size(); ++i) d = std::max(d, std::abs(x.f[i] - y.f[i]));
    return d;
}

}  // namespace

TEST(Tridiagonal, MatchesDenseElimination) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t n = 12;
    std::vector<double> lower(n), diag(n), upper(n), rhs(n), x(n), scratch;
    for (std::size_t i = 0; i < n; ++i) {
        lower[i] = i > 0 ? u(gen) : 0.0;
        upper[i] = i + 1 < n ? u(gen) : 0.0;
        diag[i] = 3.0 + u(gen);
        rhs[i] = u(gen);
    }
    solve_tridiagonal(lower, diag, upper, rhs, x, scratch);

    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) a[i][i - 1] = lower[i];
        a[i][i] = diag[i];
        if (i + 1 < n) a[i][i + 1] = upper[i];
        a[i][n] = rhs[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
        }
        std::swap(a[c], a[pivot]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double m = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= n; ++k) a[r][k] -= m * a[c][k];
        }
    }
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(x[i], a[i][n] / a[i][i], 1e-13);
}

TEST(Tridiagonal, ZeroPivotIsReported) {
    std::vector<double> l{0, 1}, d{0, 1}, up{1, 0}, rhs{1, 1}, x(2), scratch;
    EXPECT_THROW(solve_tridiagonal(l, d, up, rhs, x, scratch), NumericalError);
}

TEST(Pide, ReducesToBlackScholes) {
    const PriceSurface s = solve_pide(black_scholes(), StrategyClosure{}, GridSpec{}, Payoff::call(100.0));
    const double oracle = oracles::black_scholes_price({100.0, 100.0, 0.05, 0.2, 1.0});
    EXPECT_LE(std::abs(s.value(0.0, 100.0) - oracle) / oracle, 0.005);
    for (double spot : {80.0, 120.0}) {
        const double o = oracles::black_scholes_price({spot, 100.0, 0.05, 0.2, 1.0});
        EXPECT_LE(std::abs(s.value(0.0, spot) - o), 0.01 * 100.0 * 0.05) << spot;
    }
}

TEST(Pide, PutReducesToBlackScholes) {
    const PriceSurface s = solve_pide(black_scholes(), StrategyClosure{}, GridSpec{}, Payoff::put(100.0));
    const double oracle = oracles::black_scholes_put({100.0, 100.0, 0.05, 0.2, 1.0});
    EXPECT_LE(std::abs(s.value(0.0, 100.0) - oracle) / oracle, 0.005);
}

TEST(Pide, TerminalConditionIsExact) {
    for (const Payoff& h : {Payoff::call(100.0), Payoff::put(90.0), Payoff::table({50, 100, 150}, {0, 20, 10})}) {
        const PriceSurface s = solve_pide(jumpy(), StrategyClosure{}, {300.0, 120, 60, true}, h);
        const std::size_t last = s.grid.n_time();
        for (std::size_t i = 0; i < s.grid.s.size(); ++i) EXPECT_EQ(s.f_at(last, i), h(s.grid.s[i]));
    }
}

TEST(Pide, CallBoundaries) {
    for (double s_max : {200.0, 400.0}) {
        const PriceSurface s = solve_pide(jumpy(), StrategyClosure{}, {s_max, 400, 200, true}, Payoff::call(100.0));
        for (std::size_t j = 0; j <= s.grid.n_time(); ++j) {
            const double tau = 1.0 - s.grid.t[j];
            EXPECT_NEAR(s.f_at(j, 0), 0.0, 1e-12);
            EXPECT_NEAR(s.f_at(j, s.grid.n_space()), s.grid.s_max() - 100.0 * std::exp(-0.05 * tau), 1e-9);
        }
    }
}

TEST(Pide, LargerDomainShrinksTruncationError) {
    const double oracle = oracles::black_scholes_price({100.0, 100.0, 0.05, 0.2, 1.0});
    const PriceSurface narrow = solve_pide(black_scholes(), StrategyClosure{}, {125.0, 125, 400, true}, Payoff::call(100.0));
    const PriceSurface wide = solve_pide(black_scholes(), StrategyClosure{}, {300.0, 300, 400, true}, Payoff::call(100.0));
    EXPECT_LT(std::abs(wide.value(0.0, 100.0) - oracle), std::abs(narrow.value(0.0, 100.0) - oracle));
}

TEST(Pide, RefinementChangesShrink) {
    std::vector<double> values;
    for (std::size_t n : {50, 100, 200, 400}) {
        values.push_back(solve_pide(jumpy(), StrategyClosure{}, {300.0, n, n, true}, Payoff::call(100.0)).value(0.0, 100.0));
    }
    for (std::size_t i = 2; i < values.size(); ++i) {
        EXPECT_LT(std::abs(values[i] - values[i - 1]), std::abs(values[i - 1] - values[i - 2])) << i;
    }
}

TEST(Pide, LinearCaseIsMonotoneInThePayoff) {
    const GridSpec grid{300.0, 300, 200, true};
    const auto low = solve_pide(jumpy(), StrategyClosure{}, grid, Payoff::call(100.0));
    const auto high = solve_pide(jumpy(), StrategyClosure{}, grid, Payoff::call(90.0));
    const auto put_low = solve_pide(jumpy(), StrategyClosure{}, grid, Payoff::put(90.0));
    const auto put_high = solve_pide(jumpy(), StrategyClosure{}, grid, Payoff::put(100.0));
    ASSERT_EQ(low.grid.s, high.grid.s);
    for (std::size_t i = 0; i < low.f.size(); ++i) {
        EXPECT_LE(low.f[i], high.f[i] + 1e-8 * 100.0);
        EXPECT_LE(put_low.f[i], put_high.f[i] + 1e-8 * 100.0);
    }
}

TEST(Pide, SolutionIsFiniteAndNonNegative) {
    ModelParams p = jumpy();
    p.a = -1.5;
    p.rho = 1.0;
    const PriceSurface s = solve_pide(p, StrategyClosure{}, {300.0, 200, 200, true}, Payoff::call(100.0));
    for (double v : s.f) {
        ASSERT_TRUE(std::isfinite(v));
        ASSERT_GE(v, -1e-8 * 100.0);
    }
    for (double v : s.theta) ASSERT_TRUE(std::isfinite(v));
}

// With lambda = 0 and exogenous zeta the hedge is linear in f, so the
// -(mu - r) theta S coupling folds into the other terms: the same PIDE with
// mu' = r and intensity rho' = rho (1 - (mu - r) k / (sigma^2 + rho k^2)).
TEST(Pide, HedgeCouplingMatchesTheFoldedLinearEquation) {
    ModelParams coupled = jumpy();
    coupled.mu = CoefficientFunction::constant(0.1);
    ModelParams folded = jumpy();
    const double k = 0.1;
    folded.rho = 0.5 * (1.0 - 0.05 * k / (0.04 + 0.5 * k * k));
    std::vector<double> gaps;
    for (std::size_t n : {200, 400}) {
        const GridSpec grid{300.0, n, n, true};
        const PriceSurface x = solve_pide(coupled, StrategyClosure{}, grid, Payoff::call(100.0));
        const PriceSurface y = solve_pide(folded, StrategyClosure{}, grid, Payoff::call(100.0));
        double gap = 0.0;
        for (std::size_t i = 0; i < x.grid.s.size(); ++i) gap = std::max(gap, std::abs(x.f_at(0, i) - y.f_at(0, i)));
        EXPECT_GE(x.diagnostics.max_picard_iterations, 2u);
        EXPECT_EQ(x.diagnostics.picard_cap_hits, 0u);
        gaps.push_back(gap);
    }
    EXPECT_LT(gaps[1], 5e-4);
    EXPECT_NEAR(gaps[1] / gaps[0], 0.5, 0.1);
}

TEST(Pide, ImpactChangesThePriceAndVanishesWithLambda) {
    const GridSpec grid{300.0, 200, 200, true};
    const PriceSurface base = solve_pide(black_scholes(), self_consistent(), grid, Payoff::call(100.0));
    double previous = std::numeric_limits<double>::infinity();
    for (double lambda : {0.05, 0.025, 0.0125}) {
        ModelParams p = black_scholes();
        p.lambda_impact = CoefficientFunction::constant(lambda);
        const PriceSurface s = solve_pide(p, self_consistent(), grid, Payoff::call(100.0));
        const double distance = sup_distance(s, base);
        EXPECT_GT(distance, 1e-3) << lambda;
        EXPECT_LT(distance, previous) << lambda;
        previous = distance;
    }
}

TEST(Pide, SelfConsistentSolveReportsDiagnostics) {
    ModelParams p = black_scholes();
    p.lambda_impact = CoefficientFunction::constant(0.025);
    const PriceSurface s = solve_pide(p, self_consistent(), {300.0, 200, 200, true}, Payoff::call(100.0));
    const auto& d = s.diagnostics;
    EXPECT_GE(d.max_picard_iterations, 2u);
    EXPECT_LE(d.max_picard_iterations, 50u);
    EXPECT_GE(d.total_picard_iterations, 200u);
    EXPECT_LT(d.worst_final_delta, 1e-6);
    EXPECT_GT(d.max_zeta_iterations, 0u);
    double max_zeta = 0.0;
    for (double z : s.zeta) max_zeta = std::max(max_zeta, std::abs(z));
    EXPECT_GT(max_zeta, 0.0);
}

TEST(Pide, StoredZetaSolvesTheClosure) {
    ModelParams p = black_scholes();
    p.lambda_impact = CoefficientFunction::constant(0.02);
    const PriceSurface s = solve_pide(p, self_consistent(), {300.0, 200, 100, true}, Payoff::call(100.0));
    const std::size_t j = 50;
    for (std::size_t i = 40; i < 160; i += 7) {
        const double si = s.grid.s[i];
        const double theta_s = (s.theta_at(j, i + 1) - s.theta_at(j, i - 1)) / (2.0 * s.grid.ds);
        double q = 0.02 * si * theta_s;
        if (q > 0.9) q = 0.9;
        const double expected = 0.2 * q / (0.02 * (1.0 - q));
        EXPECT_NEAR(s.zeta[s.index(j, i)], expected, 1e-6 * (1.0 + std::abs(expected))) << si;
    }
}

TEST(LiuYong, HedgeIsTheDeltaWithoutJumps) {
    for (double lambda : {0.0, 0.05}) {
        ModelParams p = black_scholes();
        p.lambda_impact = CoefficientFunction::constant(lambda);
        const PriceSurface s = solve_pide(p, self_consistent(), GridSpec{}, Payoff::call(100.0));
        const LiuYongReport r = reduce_to_liu_yong_check(s, p);
        EXPECT_TRUE(r.jumps_off);
        EXPECT_TRUE(r.within_bound());
        EXPECT_LE(r.max_abs_diff, 1e-8) << lambda;
    }
}

TEST(LiuYong, JumpsBreakTheIdentity) {
    const PriceSurface s = solve_pide(jumpy(), StrategyClosure{}, GridSpec{}, Payoff::call(100.0));
    const LiuYongReport r = reduce_to_liu_yong_check(s, jumpy());
    EXPECT_FALSE(r.jumps_off);
    EXPECT_GT(r.max_abs_diff, 1e-2);
}

TEST(Pide, RejectsUnstableJumpStep) {
    ModelParams p = jumpy();
    p.rho = 5.0;
    EXPECT_THROW((void)solve_pide(p, StrategyClosure{}, {300.0, 100, 2, true}, Payoff::call(100.0)), NumericalError);
}

TEST(Pide, RejectsInvalidJumpFactor) {
    ModelParams p = jumpy();
    p.a = -6.0;
    try {
        (void)solve_pide(p, StrategyClosure{}, {300.0, 100, 50, true}, Payoff::call(100.0));
        FAIL() << "expected ModelValidationError";
    } catch (const ModelValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("jump factor <= 0"), std::string::npos);
    }
}

TEST(Surface, InterpolationAndAsymptote) {
    const PriceSurface s = solve_pide(black_scholes(), StrategyClosure{}, {300.0, 300, 100, true}, Payoff::call(100.0));
    EXPECT_DOUBLE_EQ(s.value(0.0, s.grid.s[100]), s.f_at(0, 100));
    EXPECT_NEAR(s.value(0.0, 100.5), 0.5 * (s.f_at(0, 100) + s.f_at(0, 101)), 1e-12);
    EXPECT_NEAR(s.value(1.0, 500.0), 400.0, 1e-9);
    EXPECT_NEAR(s.value(0.0, 500.0), 500.0 - 100.0 * std::exp(-0.05), 1e-9);
    EXPECT_DOUBLE_EQ(s.hedge(0.0, s.grid.s[120]), s.theta_at(0, 120));
}
