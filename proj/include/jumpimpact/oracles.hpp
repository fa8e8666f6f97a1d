#pragma once

#include <cstddef>

namespace jumpimpact::oracles {

struct BsInputs {
    double s = 100.0;
    double strike = 100.0;
    double rate = 0.0;
    double sigma = 0.2;
    double tau = 1.0;
};

/// Standard normal CDF by Marsaglia's Taylor series,
///     Phi(x) = 1/2 + phi(x) (x + x^3/3 + x^5/(3*5) + ...),
/// summed until the terms stop changing the result. Absolute error is a few
/// ulps of 1/2 for |x| <= 10; beyond that 0 or 1 is returned (true tail < 1e-23).
[[nodiscard]] double normal_cdf(double x);

/// Black-Scholes call. tau = 0 returns the payoff. Throws std::invalid_argument
/// unless s > 0, strike > 0, sigma > 0 and tau >= 0.
[[nodiscard]] double black_scholes_price(const BsInputs& in);
[[nodiscard]] double black_scholes_put(const BsInputs& in);

/// Discounted call expectation under the lognormal terminal law, by the
/// trapezoid rule in the standard-normal variable z. The window is
/// [sigma sqrt(tau) - 10, sigma sqrt(tau) + 10], cut at the exercise boundary
/// so the integrand is smooth. Requires n_points >= 1000.
[[nodiscard]] double lognormal_quadrature_price(const BsInputs& in, std::size_t n_points);

}  // namespace jumpimpact::oracles
