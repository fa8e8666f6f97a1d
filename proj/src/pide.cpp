#include "jumpimpact/pide.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "jumpimpact/errors.hpp"
#include "jumpimpact/hedge.hpp"
#include "jumpimpact/tridiagonal.hpp"

namespace jumpimpact {

namespace {

double row_value(const Grid& g, std::span<const double> row, double s, double slope, double intercept) {
    if (s >= g.s_max()) return slope * s + intercept;
    const double pos = s / g.ds;
    const auto lo = static_cast<std::size_t>(pos);
    const double w = pos - static_cast<double>(lo);
    return (1.0 - w) * row[lo] + w * row[lo + 1];
}

/// Centred derivative inside, one-sided second order at both ends.
double derivative(std::span<const double> v, std::size_t i, double ds) {
    const std::size_t n = v.size() - 1;
    if (i == 0) return (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * ds);
    if (i == n) return (3.0 * v[n] - 4.0 * v[n - 1] + v[n - 2]) / (2.0 * ds);
    return (v[i + 1] - v[i - 1]) / (2.0 * ds);
}

/// Node-wise coefficients at one time level that do not depend on zeta.
struct RowCoefficients {
    std::vector<double> mu, sigma, r, lambda, eta;

    RowCoefficients(const ModelParams& p, const StrategyClosure& c, const Grid& g, double t) {
        const std::size_t n = g.s.size();
        mu.resize(n);
        sigma.resize(n);
        r.resize(n);
        lambda.resize(n);
        eta.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double s = g.s[i];
            mu[i] = p.mu(t, s);
            sigma[i] = p.sigma(t, s);
            r[i] = p.r(t, s);
            lambda[i] = p.lambda_impact(t, s);
            eta[i] = c.eta(t, s);
        }
    }
};

struct ZetaSolve {
    std::size_t iterations = 0;
    bool capped = false;
    std::size_t feedback_hits = 0;
};

/// Fixed point zeta = sigma S theta_S / (1 - lambda S theta_S) on one row,
/// starting from `zeta`. Switches to 0.5 damping once the update grows.
ZetaSolve solve_zeta_row(const ModelParams& p, const StrategyClosure& c, const Grid& g, const RowCoefficients& co,
                         double t, std::span<const double> f_row, double slope, double intercept,
                         const PideOptions& opt, std::vector<double>& zeta, std::vector<double>& theta) {
    const std::size_t n = g.s.size();
    std::vector<double> next(n);
    ZetaSolve out;
    double relax = 1.0;
    double previous_change = INFINITY;
    for (std::size_t m = 1; m <= opt.zeta_cap; ++m) {
        hedge_row(p, g, t, f_row, zeta, slope, intercept, theta);
        out.feedback_hits = 0;
        double scale = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double theta_s = derivative(theta, i, g.ds);
            const double s = g.s[i];
            if (co.lambda[i] > 0.0) {
                double q = co.lambda[i] * s * theta_s;
                if (q > c.max_feedback) {
                    q = c.max_feedback;
                    ++out.feedback_hits;
                }
                next[i] = co.sigma[i] * q / (co.lambda[i] * (1.0 - q));
            } else {
                next[i] = co.sigma[i] * s * theta_s;
            }
            scale = std::max(scale, 1.0 + std::abs(next[i]));
        }
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) change = std::max(change, std::abs(next[i] - zeta[i]));
        if (change > previous_change) relax = 0.5;
        previous_change = change;
        for (std::size_t i = 0; i < n; ++i) zeta[i] += relax * (next[i] - zeta[i]);
        out.iterations = m;
        if (!std::isfinite(change)) throw NumericalError("self-consistent zeta iteration diverged");
        if (change < opt.zeta_tolerance * scale) return out;
    }
    out.capped = true;
    return out;
}

}  // namespace

void hedge_row(const ModelParams& params, const Grid& g, double t, std::span<const double> f_row,
               std::span<const double> zeta_row, double slope, double intercept, std::span<double> theta_out) {
    const std::size_t n = g.s.size();
    theta_out[0] = derivative(f_row, 0, g.ds);
    for (std::size_t i = 1; i < n; ++i) {
        const double s = g.s[i];
        HedgeContext ctx;
        ctx.s = s;
        ctx.f = f_row[i];
        ctx.f_s = derivative(f_row, i, g.ds);
        ctx.sigma = params.sigma(t, s);
        ctx.lambda = params.lambda_impact(t, s);
        ctx.zeta = zeta_row[i];
        ctx.a = params.a;
        ctx.b = params.b;
        ctx.rho = params.rho;
        const double factor = jump_factor(params, t, s, ctx.zeta);
        ctx.f_jumped = row_value(g, f_row, s * factor, slope, intercept);
        theta_out[i] = theta_star(ctx);
    }
}

PriceSurface solve_pide(const ModelParams& params, const StrategyClosure& closure, const GridSpec& grid_spec,
                        const Payoff& payoff, const PideOptions& opt) {
    const double strike = payoff.kind() == Payoff::Kind::table ? 0.0 : payoff.strike();
    const ValidationReport report = validate_params(params, grid_spec, closure, strike);
    if (!report.ok()) throw ModelValidationError(report.summary(5));

    PriceSurface sf;
    sf.grid = make_grid(grid_spec, params.maturity, strike);
    const Grid& g = sf.grid;
    const std::size_t n = g.s.size();
    const std::size_t last = n - 1;
    const std::size_t rows = g.t.size();
    const double dt = g.dt;
    if (params.rho * dt > 1.0) {
        throw NumericalError("explicit jump term unstable: rho * dt > 1; increase grid.n_time");
    }
    const bool self_consistent = closure.mode == StrategyClosure::Mode::self_consistent;
    const double scale = payoff.scale();

    sf.f.assign(rows * n, 0.0);
    sf.theta.assign(rows * n, 0.0);
    sf.zeta.assign(rows * n, 0.0);
    sf.asymptote_slope = payoff.asymptote_slope();
    sf.asymptote_intercept = payoff.asymptote_intercept();
    sf.params_hash = params_hash(params, closure);
    sf.boundary_discount.assign(rows, 1.0);
    for (std::size_t j = rows - 1; j-- > 0;) {
        sf.boundary_discount[j] = sf.boundary_discount[j + 1] * std::exp(-params.r(g.t[j], g.s_max()) * dt);
    }
    auto row = [&](std::vector<double>& v, std::size_t j) { return std::span<double>(v.data() + j * n, n); };
    SolveDiagnostics& diag = sf.diagnostics;

    // Terminal row.
    {
        const std::size_t j = rows - 1;
        const double t = g.t[j];
        auto f_row = row(sf.f, j);
        for (std::size_t i = 0; i < n; ++i) f_row[i] = payoff(g.s[i]);
        std::vector<double> zeta(n), theta(n);
        for (std::size_t i = 0; i < n; ++i) zeta[i] = self_consistent ? 0.0 : closure.zeta(t, g.s[i]);
        const double intercept = sf.asymptote_intercept * sf.boundary_discount[j];
        if (self_consistent) {
            const RowCoefficients co(params, closure, g, t);
            const ZetaSolve z =
                solve_zeta_row(params, closure, g, co, t, f_row, sf.asymptote_slope, intercept, opt, zeta, theta);
            diag.max_zeta_iterations = std::max(diag.max_zeta_iterations, z.iterations);
            diag.zeta_cap_hits += z.capped ? 1 : 0;
            diag.feedback_cap_hits += z.feedback_hits;
        }
        hedge_row(params, g, t, f_row, zeta, sf.asymptote_slope, intercept, theta);
        std::copy(zeta.begin(), zeta.end(), row(sf.zeta, j).begin());
        std::copy(theta.begin(), theta.end(), row(sf.theta, j).begin());
    }

    std::vector<double> lower(n), centre(n), upper(n), rhs(n), scratch;
    std::vector<double> iterate(n), next(n), zeta(n), theta(n), factor(n), jump_term(n);

    for (std::size_t j = rows - 1; j-- > 0;) {
        const double t = g.t[j];
        const auto later = std::span<const double>(sf.f.data() + (j + 1) * n, n);
        const double later_intercept = sf.asymptote_intercept * sf.boundary_discount[j + 1];
        const double intercept = sf.asymptote_intercept * sf.boundary_discount[j];
        const RowCoefficients co(params, closure, g, t);

        std::copy(later.begin(), later.end(), iterate.begin());
        if (self_consistent) {
            std::copy_n(sf.zeta.begin() + static_cast<std::ptrdiff_t>((j + 1) * n), n, zeta.begin());
        } else {
            for (std::size_t i = 0; i < n; ++i) zeta[i] = closure.zeta(t, g.s[i]);
        }

        std::size_t k = 0;
        double delta = INFINITY;
        double relax = 1.0;
        for (k = 1; k <= opt.picard_cap; ++k) {
            if (self_consistent) {
                const ZetaSolve z = solve_zeta_row(params, closure, g, co, t, iterate, sf.asymptote_slope, intercept,
                                                   opt, zeta, theta);
                diag.max_zeta_iterations = std::max(diag.max_zeta_iterations, z.iterations);
                diag.zeta_cap_hits += z.capped ? 1 : 0;
            }
            hedge_row(params, g, t, iterate, zeta, sf.asymptote_slope, intercept, theta);

            for (std::size_t i = 1; i < last; ++i) {
                const double s = g.s[i];
                factor[i] = jump_factor(params, t, s, zeta[i]);
                const double jumped = row_value(g, later, s * factor[i], sf.asymptote_slope, later_intercept);
                jump_term[i] = params.rho * (jumped - later[i]);
            }

            lower[0] = 0.0;
            centre[0] = 1.0 + co.r[0] * dt;
            upper[0] = 0.0;
            rhs[0] = later[0];
            for (std::size_t i = 1; i < last; ++i) {
                const double s = g.s[i];
                const double lam = co.lambda[i];
                const double k_load = params.a * co.sigma[i] + params.b * lam * zeta[i];
                const double vol = co.sigma[i] + lam * zeta[i];
                const double drift = co.mu[i] + lam * co.eta[i] - params.rho * k_load;
                const double diffusion = 0.5 * vol * vol * s * s / (g.ds * g.ds);
                const double advection = drift * s / (2.0 * g.ds);
                if (k == 1 && (diffusion - advection < 0.0 || diffusion + advection < 0.0)) {
                    ++diag.monotonicity_violations;
                }
                lower[i] = -dt * (diffusion - advection);
                centre[i] = 1.0 + dt * (2.0 * diffusion + co.r[i]);
                upper[i] = -dt * (diffusion + advection);
                const double coupling = (co.mu[i] - co.r[i] + lam * co.eta[i]) * theta[i] * s;
                rhs[i] = later[i] + dt * (jump_term[i] - coupling);
            }
            lower[last] = 0.0;
            centre[last] = 1.0;
            upper[last] = 0.0;
            rhs[last] = sf.asymptote_slope * g.s[last] + intercept;

            solve_tridiagonal(lower, centre, upper, rhs, next, scratch);
            const double previous_delta = delta;
            delta = 0.0;
            for (std::size_t i = 0; i < n; ++i) delta = std::max(delta, std::abs(next[i] - iterate[i]));
            // Gamma-dependent volatility can make plain Picard oscillate.
            if (self_consistent && delta > 0.9 * previous_delta) relax = std::max(relax * 0.5, 1.0 / 16.0);
            if (relax != 1.0) {
                for (std::size_t i = 0; i < n; ++i) next[i] = iterate[i] + relax * (next[i] - iterate[i]);
            }
            std::swap(iterate, next);
            if (!std::isfinite(delta)) {
                char buf[120];
                std::snprintf(buf, sizeof buf, "Picard iteration diverged at t=%.6g", t);
                throw NumericalError(buf);
            }
            if (delta < opt.picard_tolerance * scale) break;
        }
        if (k > opt.picard_cap) {
            k = opt.picard_cap;
            ++diag.picard_cap_hits;
        }
        diag.max_picard_iterations = std::max(diag.max_picard_iterations, k);
        diag.total_picard_iterations += k;
        diag.worst_final_delta = std::max(diag.worst_final_delta, delta);

        // Store the row with a hedge (and zeta) consistent with the final values.
        if (self_consistent) {
            const ZetaSolve z = solve_zeta_row(params, closure, g, co, t, iterate, sf.asymptote_slope, intercept, opt,
                                               zeta, theta);
            diag.feedback_cap_hits += z.feedback_hits;
        }
        hedge_row(params, g, t, iterate, zeta, sf.asymptote_slope, intercept, theta);
        std::copy(iterate.begin(), iterate.end(), row(sf.f, j).begin());
        std::copy(zeta.begin(), zeta.end(), row(sf.zeta, j).begin());
        std::copy(theta.begin(), theta.end(), row(sf.theta, j).begin());
    }

    const double floor = -1e-8 * scale;
    for (std::size_t idx = 0; idx < sf.f.size(); ++idx) {
        if (!std::isfinite(sf.f[idx]) || !std::isfinite(sf.theta[idx])) {
            throw NumericalError("PIDE solution is not finite");
        }
        if (payoff.nonnegative() && sf.f[idx] < floor) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "PIDE solution negative (%.6g) at t=%.6g S=%.6g", sf.f[idx],
                          g.t[idx / n], g.s[idx % n]);
            throw NumericalError(buf);
        }
    }
    return sf;
}

LiuYongReport reduce_to_liu_yong_check(const PriceSurface& sf, const ModelParams& params) {
    LiuYongReport rep;
    rep.jumps_off = params.a == 0.0 && params.b == 0.0;
    const Grid& g = sf.grid;
    rep.ds = g.ds;
    const std::size_t n = g.s.size();
    for (std::size_t j = 0; j < g.t.size(); ++j) {
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double fm = sf.f_at(j, i - 1);
            const double f0 = sf.f_at(j, i);
            const double fp = sf.f_at(j, i + 1);
            const double fd = (fp - fm) / (2.0 * g.ds);
            const double fss = (fp - 2.0 * f0 + fm) / (g.ds * g.ds);
            rep.max_abs_diff = std::max(rep.max_abs_diff, std::abs(sf.theta_at(j, i) - fd));
            rep.max_abs_fss = std::max(rep.max_abs_fss, std::abs(fss));
        }
    }
    rep.bound = 5.0 * g.ds * rep.max_abs_fss;
    rep.constant = rep.max_abs_diff / g.ds;
    return rep;
}

}  // namespace jumpimpact
