#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "jumpimpact/oracles.hpp"

using namespace jumpimpact::oracles;

TEST(NormalCdf, AgreesWithErfc) {
    for (double x = -9.0; x <= 9.0; x += 0.0137) {
        const double reference = 0.5 * std::erfc(-x / std::sqrt(2.0));
        EXPECT_NEAR(normal_cdf(x), reference, 1e-14) << x;
    }
    EXPECT_EQ(normal_cdf(11.0), 1.0);
    EXPECT_EQ(normal_cdf(-11.0), 0.0);
    EXPECT_EQ(normal_cdf(0.0), 0.5);
}

TEST(NormalCdf, IsSymmetric) {
    for (double x = 0.0; x < 8.0; x += 0.31) EXPECT_NEAR(normal_cdf(x) + normal_cdf(-x), 1.0, 1e-15);
}

TEST(BlackScholes, ExpiryReturnsThePayoff) {
    EXPECT_EQ(black_scholes_price({120.0, 100.0, 0.05, 0.2, 0.0}), 20.0);
    EXPECT_EQ(black_scholes_price({80.0, 100.0, 0.05, 0.2, 0.0}), 0.0);
    EXPECT_EQ(black_scholes_put({80.0, 100.0, 0.05, 0.2, 0.0}), 20.0);
}

TEST(BlackScholes, AtTheMoneyZeroRateMatchesQuadrature) {
    const BsInputs in{100.0, 100.0, 0.0, 0.2, 1.0};
    const double closed = black_scholes_price(in);
    // with r = 0 and S = K the call reduces to S (2 Phi(sigma/2) - 1) = S erf(sigma / (2 sqrt 2))
    EXPECT_NEAR(closed, 100.0 * std::erf(0.1 / std::sqrt(2.0)), 1e-12);
    EXPECT_NEAR(closed, 7.965567455405804, 1e-10);
    EXPECT_NEAR(lognormal_quadrature_price(in, 1000000), closed, 1e-8);
}

TEST(BlackScholes, LargeVolatilityApproachesTheSpot) {
    const BsInputs in{100.0, 100.0, 0.0, 5.0, 1.0};
    const double value = black_scholes_price(in);
    EXPECT_LT(value, 100.0);
    EXPECT_GT(value, 0.99 * 100.0 * (2.0 * normal_cdf(2.5) - 1.0));
    EXPECT_NEAR(value, lognormal_quadrature_price(in, 1000000), 1e-8);
}

TEST(BlackScholes, RejectsInvalidInputs) {
    EXPECT_THROW((void)black_scholes_price({0.0, 100.0, 0.0, 0.2, 1.0}), std::invalid_argument);
    EXPECT_THROW((void)black_scholes_price({100.0, -1.0, 0.0, 0.2, 1.0}), std::invalid_argument);
    EXPECT_THROW((void)black_scholes_price({100.0, 100.0, 0.0, 0.0, 1.0}), std::invalid_argument);
    EXPECT_THROW((void)black_scholes_price({100.0, 100.0, 0.0, 0.2, -1.0}), std::invalid_argument);
    EXPECT_THROW((void)lognormal_quadrature_price({100.0, 100.0, 0.0, 0.2, 1.0}, 999), std::invalid_argument);
}

TEST(BlackScholes, MonotoneInVolatilityAndMaturity) {
    for (double s : {70.0, 100.0, 140.0}) {
        double previous = 0.0;
        for (double sigma = 0.05; sigma < 1.5; sigma += 0.05) {
            const double v = black_scholes_price({s, 100.0, 0.03, sigma, 1.0});
            EXPECT_GT(v, previous);
            previous = v;
        }
        previous = black_scholes_price({s, 100.0, 0.03, 0.25, 0.0});
        for (double tau = 0.1; tau < 5.0; tau += 0.1) {
            const double v = black_scholes_price({s, 100.0, 0.03, 0.25, tau});
            EXPECT_GE(v, previous);
            previous = v;
        }
    }
}

TEST(BlackScholes, PutCallParity) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 0; n < 200; ++n) {
        const BsInputs in{20.0 + 200.0 * u(gen), 50.0 + 100.0 * u(gen), 0.1 * u(gen), 0.05 + 0.8 * u(gen),
                          3.0 * u(gen)};
        const double parity = in.s - in.strike * std::exp(-in.rate * in.tau);
        EXPECT_NEAR(black_scholes_price(in) - black_scholes_put(in), parity, 1e-10);
    }
}

TEST(Quadrature, ExpiryIsExact) {
    EXPECT_EQ(lognormal_quadrature_price({130.0, 100.0, 0.05, 0.2, 0.0}, 1000), 30.0);
}

TEST(Quadrature, DoublingPointsConverges) {
    for (const BsInputs& in : {BsInputs{100.0, 100.0, 0.05, 0.2, 1.0}, BsInputs{80.0, 110.0, 0.01, 0.4, 2.0}}) {
        double previous_change = std::numeric_limits<double>::infinity();
        double previous = lognormal_quadrature_price(in, 1000);
        for (std::size_t n = 2000; n <= 32000; n *= 2) {
            const double v = lognormal_quadrature_price(in, n);
            const double change = std::abs(v - previous);
            EXPECT_LT(change, previous_change) << n;
            previous_change = change;
            previous = v;
        }
    }
}

TEST(Quadrature, MatchesClosedFormOnRandomInputs) {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 0; n < 20; ++n) {
        const BsInputs in{50.0 + 100.0 * u(gen), 60.0 + 80.0 * u(gen), 0.1 * u(gen), 0.1 + 0.5 * u(gen),
                          0.1 + 2.0 * u(gen)};
        EXPECT_NEAR(lognormal_quadrature_price(in, 1000000), black_scholes_price(in), 1e-8) << n;
    }
}
