#include "jumpimpact/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "jumpimpact/errors.hpp"
#include "jumpimpact/parallel.hpp"

namespace jumpimpact {

ClosureField::ClosureField(const StrategyClosure& closure, const PriceSurface* surface)
    : closure_(&closure), surface_(surface) {
    if (closure.mode == StrategyClosure::Mode::self_consistent && surface == nullptr) {
        throw ConfigError("self-consistent closure needs a solved price surface");
    }
}

double ClosureField::zeta(double t, double s) const {
    if (closure_->mode == StrategyClosure::Mode::self_consistent) return surface_->strategy_zeta(t, s);
    return closure_->zeta(t, s);
}

StepDraws draw_step(PathRng& rng, double dt, double rho) {
    StepDraws d;
    d.dw = std::sqrt(dt) * rng.normal();
    d.dn = rng.poisson(rho * dt);
    return d;
}

double asset_step(const ModelParams& p, double t, double s, double eta, double zeta, double dt, const StepDraws& d) {
    const double lam = p.lambda_impact(t, s);
    const double drift = p.mu(t, s) + lam * eta;
    const double vol = p.sigma(t, s) + lam * zeta;
    const double k = jump_loading(p, t, s, zeta);
    const double continuous = 1.0 + (drift - p.rho * k) * dt + vol * d.dw;
    if (!(continuous > 0.0)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "non-positive diffusion step factor %.6g at t=%.6g S=%.6g", continuous, t, s);
        throw NumericalError(buf);
    }
    double next = s * continuous;
    if (d.dn > 0) {
        const double factor = jump_factor(p, t, s, zeta);
        for (std::uint32_t n = 0; n < d.dn; ++n) next *= factor;
    }
    return next;
}

double wealth_step(const ModelParams& p, double t, double s, double theta, double v, double eta, double zeta,
                   double dt, const StepDraws& d, double growth) {
    const double lam = p.lambda_impact(t, s);
    const double excess = p.mu(t, s) - p.r(t, s) + lam * eta;
    const double vol = lam * zeta + p.sigma(t, s);
    const double k = jump_loading(p, t, s, zeta);
    const double dm = static_cast<double>(d.dn) - p.rho * dt;
    return v * growth + theta * s * (excess * dt + vol * d.dw + k * dm);
}

void validate_step_size(const ModelParams& p, const ClosureField& closure, std::size_t n_steps) {
    const double dt = p.maturity / static_cast<double>(n_steps);
    const double root_dt = std::sqrt(dt);
    for (std::size_t j = 0; j <= n_steps; ++j) {
        const double t = static_cast<double>(j) * dt;
        for (int e = -4; e <= 4; ++e) {
            const double s = p.s0 * std::ldexp(1.0, e);
            const double eta = closure.eta(t, s);
            const double zeta = closure.zeta(t, s);
            const double lam = p.lambda_impact(t, s);
            const double drift = p.mu(t, s) + lam * eta - p.rho * jump_loading(p, t, s, zeta);
            const double vol = p.sigma(t, s) + lam * zeta;
            const double probe = std::abs(drift * dt) + std::abs(vol) * 4.0 * root_dt;
            if (!(probe < 1.0)) {
                char buf[200];
                std::snprintf(buf, sizeof buf,
                              "time step too large: |drift dt| + 4|vol| sqrt(dt) = %.6g >= 1 at t=%.6g S=%.6g", probe,
                              t, s);
                throw ModelValidationError(buf);
            }
        }
    }
}

namespace {

void check_simulation_inputs(const ModelParams& p, std::size_t n_paths, std::size_t n_steps) {
    if (n_steps < 1) throw ConfigError("n_steps must be at least 1");
    if (n_paths < 1) throw ConfigError("n_paths must be at least 1");
    if (!(p.s0 > 0.0)) throw ModelValidationError("s0 must be positive");
    if (!(p.maturity > 0.0)) throw ModelValidationError("maturity must be positive");
    if (!(p.rho >= 0.0)) throw ModelValidationError("rho must be non-negative");
}

}  // namespace

PathBundle simulate_coupled_system(const ModelParams& params, const StrategyClosure& closure, std::size_t n_paths,
                                   std::size_t n_steps, std::uint64_t seed, const PriceSurface* surface) {
    check_simulation_inputs(params, n_paths, n_steps);
    const ClosureField field(closure, surface);
    validate_step_size(params, field, n_steps);

    PathBundle b;
    b.n_paths = n_paths;
    b.n_steps = n_steps;
    b.dt = params.maturity / static_cast<double>(n_steps);
    b.rho = params.rho;
    b.seed = seed;
    b.time.resize(n_steps + 1);
    for (std::size_t j = 0; j <= n_steps; ++j) b.time[j] = static_cast<double>(j) * b.dt;
    b.time.back() = params.maturity;
    const std::size_t nodes = n_paths * (n_steps + 1);
    b.s.assign(nodes, 0.0);
    b.theta.assign(nodes, 0.0);
    b.v.assign(nodes, 0.0);
    b.account.assign(nodes, 0.0);
    b.jumps.assign(nodes, 0);
    b.dw.assign(n_paths * n_steps, 0.0);

    parallel_for(n_paths, [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            PathRng rng(seed, p);
            double s = params.s0;
            double theta = params.theta0;
            double account = 1.0;
            std::int64_t jumps = 0;
            b.s[b.at(p, 0)] = s;
            b.theta[b.at(p, 0)] = theta;
            b.account[b.at(p, 0)] = account;
            for (std::size_t j = 0; j < n_steps; ++j) {
                const double t = b.time[j];
                const StepDraws d = draw_step(rng, b.dt, params.rho);
                const double eta = field.eta(t, s);
                const double zeta = field.zeta(t, s);
                const double dm = static_cast<double>(d.dn) - params.rho * b.dt;
                account *= std::exp(params.r(t, s) * b.dt);
                theta += eta * b.dt + zeta * (d.dw + params.b * dm);
                s = asset_step(params, t, s, eta, zeta, b.dt, d);
                jumps += d.dn;
                b.dw[p * n_steps + j] = d.dw;
                b.s[b.at(p, j + 1)] = s;
                b.theta[b.at(p, j + 1)] = theta;
                b.account[b.at(p, j + 1)] = account;
                b.jumps[b.at(p, j + 1)] = jumps;
            }
        }
    });
    return b;
}

void evolve_wealth(PathBundle& b, const ModelParams& params, const StrategyClosure& closure, double v0,
                   const PriceSurface* surface) {
    const ClosureField field(closure, surface);
    if (b.s.size() != b.n_paths * (b.n_steps + 1) || b.dw.size() != b.n_paths * b.n_steps) {
        throw ConfigError("path bundle arrays do not match its declared shape");
    }
    parallel_for(b.n_paths, [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            double v = v0;
            b.v[b.at(p, 0)] = v;
            for (std::size_t j = 0; j < b.n_steps; ++j) {
                const double t = b.time[j];
                const double s = b.s[b.at(p, j)];
                StepDraws d;
                d.dw = b.dw_at(p, j);
                d.dn = static_cast<std::uint32_t>(b.jumps[b.at(p, j + 1)] - b.jumps[b.at(p, j)]);
                const double growth = b.account[b.at(p, j + 1)] / b.account[b.at(p, j)];
                v = wealth_step(params, t, s, b.theta[b.at(p, j)], v, field.eta(t, s), field.zeta(t, s), b.dt, d,
                                growth);
                b.v[b.at(p, j + 1)] = v;
            }
        }
    });
}

void apply_policy(PathBundle& b, const std::function<double(double, double)>& policy) {
    for (std::size_t p = 0; p < b.n_paths; ++p) {
        for (std::size_t j = 0; j <= b.n_steps; ++j) {
            b.theta[b.at(p, j)] = policy(b.time[j], b.s[b.at(p, j)]);
        }
    }
}

SelfFinancingResidual self_financing_residual(const PathBundle& b) {
    SelfFinancingResidual out;
    double sum = 0.0;
    for (std::size_t p = 0; p < b.n_paths; ++p) {
        double psi = (b.v[b.at(p, 0)] - b.theta[b.at(p, 0)] * b.s[b.at(p, 0)]) / b.account[b.at(p, 0)];
        double path_max = 0.0;
        for (std::size_t j = 1; j <= b.n_steps; ++j) {
            const std::size_t k = b.at(p, j);
            psi -= (b.theta[k] - b.theta[k - 1]) * b.s[k] / b.account[k];
            const double gap = std::abs(psi * b.account[k] + b.theta[k] * b.s[k] - b.v[k]);
            path_max = std::max(path_max, gap);
        }
        out.max_abs = std::max(out.max_abs, path_max);
        sum += path_max;
    }
    out.mean_path_max = b.n_paths ? sum / static_cast<double>(b.n_paths) : 0.0;
    return out;
}

}  // namespace jumpimpact
