#include "jumpimpact/hedge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "jumpimpact/errors.hpp"
#include "jumpimpact/parallel.hpp"
#include "jumpimpact/rng.hpp"
#include "jumpimpact/simulate.hpp"

namespace jumpimpact {

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

void check_denominator(const HedgeContext& c) {
    if (!std::isfinite(c.s) || !std::isfinite(c.f) || !std::isfinite(c.f_s) || !std::isfinite(c.f_jumped)) {
        throw NumericalError("hedge context has non-finite entries");
    }
    if (c.s == 0.0) throw NumericalError("degenerate hedge denominator: S = 0");
    const double vol = c.sigma + c.lambda * c.zeta;
    const double k = c.a * c.sigma + c.b * c.lambda * c.zeta;
    if (vol == 0.0 && (c.rho == 0.0 || k == 0.0)) {
        throw NumericalError("degenerate hedge denominator: sigma + lambda*zeta = 0 with no jump loading");
    }
}

Quad local_risk_quad(const HedgeContext& c, const Quad& x) {
    const Quad s = c.s;
    const Quad vol = Quad(c.sigma) + Quad(c.lambda) * Quad(c.zeta);
    const Quad k = Quad(c.a) * Quad(c.sigma) + Quad(c.b) * Quad(c.lambda) * Quad(c.zeta);
    const Quad diffusion_gap = Quad(c.f_s) - x;
    const Quad jump_gap = Quad(c.f_jumped) - Quad(c.f) - x * s * k;
    return vol * vol * s * s * diffusion_gap * diffusion_gap + Quad(c.rho) * jump_gap * jump_gap;
}

}  // namespace

double local_risk(const HedgeContext& c, double x) {
    const double vol = c.sigma + c.lambda * c.zeta;
    const double k = c.a * c.sigma + c.b * c.lambda * c.zeta;
    const double diffusion_gap = c.f_s - x;
    const double jump_gap = c.f_jumped - c.f - x * c.s * k;
    return vol * vol * c.s * c.s * diffusion_gap * diffusion_gap + c.rho * jump_gap * jump_gap;
}

double theta_star(const HedgeContext& c) {
    check_denominator(c);
    const double vol = c.sigma + c.lambda * c.zeta;
    const double k = c.a * c.sigma + c.b * c.lambda * c.zeta;
    const double s2 = c.s * c.s;
    const double numerator = vol * vol * s2 * c.f_s + c.rho * c.s * k * (c.f_jumped - c.f);
    const double denominator = vol * vol * s2 + c.rho * s2 * k * k;
    return numerator / denominator;
}

double theta_oracle(const HedgeContext& c) {
    check_denominator(c);
    const Quad centre = c.f_s;
    const Quad at_centre = local_risk_quad(c, centre);
    // Grow [centre - w, centre + w] until both ends are no lower than the
    // centre; a convex function then has its minimizer inside.
    Quad width = 1.0 + std::abs(c.f_s);
    for (int i = 0; i < 200; ++i) {
        if (local_risk_quad(c, centre - width) >= at_centre && local_risk_quad(c, centre + width) >= at_centre) break;
        width *= 2;
    }
    Quad lo = centre - width;
    Quad hi = centre + width;
    const Quad target = 1e-12;
    while (hi - lo > target) {
        const Quad third = (hi - lo) / 3;
        const Quad m1 = lo + third;
        const Quad m2 = hi - third;
        if (local_risk_quad(c, m1) < local_risk_quad(c, m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    return static_cast<double>((lo + hi) / 2);
}

double ThetaPolicy::operator()(const PriceSurface& surface, double t, double s) const {
    switch (kind) {
        case Kind::surface:
            return surface.hedge(t, s);
        case Kind::constant:
            return constant;
        case Kind::perturbed:
            return surface.hedge(t, s) + static_cast<double>(direction) * epsilon;
    }
    return 0.0;
}

std::string ThetaPolicy::label() const {
    char buf[64];
    switch (kind) {
        case Kind::surface:
            return "theta_star";
        case Kind::constant:
            std::snprintf(buf, sizeof buf, "constant(%.12g)", constant);
            return buf;
        case Kind::perturbed:
            std::snprintf(buf, sizeof buf, "theta_star%+.12g", static_cast<double>(direction) * epsilon);
            return buf;
    }
    return {};
}

std::uint64_t params_hash(const ModelParams& params, const StrategyClosure& closure) {
    return fnv1a64(params.fingerprint() + "#" + closure.fingerprint());
}

std::vector<ReplicationReport> replication_error(const ModelParams& params, const StrategyClosure& closure,
                                                 const Payoff& payoff, const PriceSurface& surface,
                                                 const std::vector<ThetaPolicy>& policies, const ReplicationRun& run) {
    if (run.n_paths < 2) throw ConfigError("replication_error needs n_paths >= 2 for a standard error");
    if (run.n_steps < 1) throw ConfigError("replication_error needs n_steps >= 1");
    if (surface.params_hash != params_hash(params, closure)) {
        throw ConfigError("price surface was solved for different model parameters or closure");
    }
    const ClosureField field(closure, &surface);
    validate_step_size(params, field, run.n_steps);

    const double dt = params.maturity / static_cast<double>(run.n_steps);
    const double v0 = surface.value(0.0, params.s0);
    const std::size_t n_policies = policies.size();
    std::vector<double> shortfall(n_policies * run.n_paths, 0.0);

    parallel_for(run.n_paths, [&](std::size_t begin, std::size_t end) {
        std::vector<double> wealth(n_policies);
        for (std::size_t p = begin; p < end; ++p) {
            PathRng rng(run.seed, p);
            double s = params.s0;
            std::fill(wealth.begin(), wealth.end(), v0);
            for (std::size_t j = 0; j < run.n_steps; ++j) {
                const double t = static_cast<double>(j) * dt;
                const StepDraws d = draw_step(rng, dt, params.rho);
                const double eta = field.eta(t, s);
                const double zeta = field.zeta(t, s);
                const double growth = std::exp(params.r(t, s) * dt);
                for (std::size_t q = 0; q < n_policies; ++q) {
                    const double theta = policies[q](surface, t, s);
                    wealth[q] = wealth_step(params, t, s, theta, wealth[q], eta, zeta, dt, d, growth);
                }
                s = asset_step(params, t, s, eta, zeta, dt, d);
            }
            const double h = payoff(s);
            for (std::size_t q = 0; q < n_policies; ++q) {
                const double gap = h - wealth[q];
                shortfall[q * run.n_paths + p] = gap * gap;
            }
        }
    });

    std::vector<ReplicationReport> reports;
    reports.reserve(n_policies);
    const double n = static_cast<double>(run.n_paths);
    for (std::size_t q = 0; q < n_policies; ++q) {
        ReplicationReport r;
        r.strategy = policies[q].label();
        r.n_paths = run.n_paths;
        r.n_steps = run.n_steps;
        r.seed = run.seed;
        r.squared_shortfall.assign(shortfall.begin() + static_cast<std::ptrdiff_t>(q * run.n_paths),
                                   shortfall.begin() + static_cast<std::ptrdiff_t>((q + 1) * run.n_paths));
        double sum = 0.0;
        for (double x : r.squared_shortfall) sum += x;
        r.estimate = sum / n;
        double ss = 0.0;
        for (double x : r.squared_shortfall) ss += (x - r.estimate) * (x - r.estimate);
        r.std_error = std::sqrt(ss / (n - 1.0) / n);
        reports.push_back(std::move(r));
    }
    return reports;
}

double paired_stderr(const ReplicationReport& x, const ReplicationReport& y) {
    const std::size_t n = std::min(x.squared_shortfall.size(), y.squared_shortfall.size());
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x.squared_shortfall[i] - y.squared_shortfall[i];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x.squared_shortfall[i] - y.squared_shortfall[i] - mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

}  // namespace jumpimpact
