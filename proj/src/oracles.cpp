#include "jumpimpact/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jumpimpact::oracles {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;

void check(const BsInputs& in) {
    if (!(in.s > 0.0) || !(in.strike > 0.0) || !(in.sigma > 0.0) || !(in.tau >= 0.0) || !std::isfinite(in.rate)) {
        throw std::invalid_argument("Black-Scholes inputs need S > 0, K > 0, sigma > 0, tau >= 0");
    }
}

}  // namespace

double normal_cdf(double x) {
    if (std::isnan(x)) return x;
    if (x < -10.0) return 0.0;
    if (x > 10.0) return 1.0;
    double sum = x;
    double term = x;
    const double x2 = x * x;
    for (int n = 3; n < 2000; n += 2) {
        term *= x2 / n;
        const double next = sum + term;
        if (next == sum) break;
        sum = next;
    }
    return 0.5 + sum * kInvSqrt2Pi * std::exp(-0.5 * x2);
}

double black_scholes_price(const BsInputs& in) {
    check(in);
    if (in.tau == 0.0) return std::max(in.s - in.strike, 0.0);
    const double vol = in.sigma * std::sqrt(in.tau);
    const double d1 = (std::log(in.s / in.strike) + (in.rate + 0.5 * in.sigma * in.sigma) * in.tau) / vol;
    const double d2 = d1 - vol;
    return in.s * normal_cdf(d1) - in.strike * std::exp(-in.rate * in.tau) * normal_cdf(d2);
}

double black_scholes_put(const BsInputs& in) {
    check(in);
    if (in.tau == 0.0) return std::max(in.strike - in.s, 0.0);
    const double vol = in.sigma * std::sqrt(in.tau);
    const double d1 = (std::log(in.s / in.strike) + (in.rate + 0.5 * in.sigma * in.sigma) * in.tau) / vol;
    const double d2 = d1 - vol;
    return in.strike * std::exp(-in.rate * in.tau) * normal_cdf(-d2) - in.s * normal_cdf(-d1);
}

double lognormal_quadrature_price(const BsInputs& in, std::size_t n_points) {
    check(in);
    if (n_points < 1000) throw std::invalid_argument("lognormal quadrature needs at least 1000 points");
    if (in.tau == 0.0) return std::max(in.s - in.strike, 0.0);

    const double vol = in.sigma * std::sqrt(in.tau);
    const double drift = (in.rate - 0.5 * in.sigma * in.sigma) * in.tau;
    const double discount = std::exp(-in.rate * in.tau);
    // Exercise boundary: S exp(drift + vol z) = K.
    const double z_star = (std::log(in.strike / in.s) - drift) / vol;
    const double hi = vol + 10.0;
    const double lo = std::max(z_star, vol - 10.0);
    if (lo >= hi) return 0.0;

    auto integrand = [&](double z) {
        const double payoff = std::max(in.s * std::exp(drift + vol * z) - in.strike, 0.0);
        return payoff * kInvSqrt2Pi * std::exp(-0.5 * z * z);
    };
    const double h = (hi - lo) / static_cast<double>(n_points - 1);
    double sum = 0.5 * (integrand(lo) + integrand(hi));
    for (std::size_t i = 1; i + 1 < n_points; ++i) sum += integrand(lo + h * static_cast<double>(i));
    return discount * sum * h;
}

}  // namespace jumpimpact::oracles
