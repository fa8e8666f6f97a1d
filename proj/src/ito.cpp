#include "jumpimpact/ito.hpp"

#include <algorithm>
#include <cmath>

#include "jumpimpact/errors.hpp"
#include "jumpimpact/parallel.hpp"
#include "jumpimpact/rng.hpp"
#include "jumpimpact/simulate.hpp"

namespace jumpimpact {

TestFunction TestFunction::linear() {
    return {"linear", [](double, double x) { return x; }, [](double, double) { return 0.0; },
            [](double, double) { return 1.0; }, [](double, double) { return 0.0; }};
}

TestFunction TestFunction::square() {
    return {"square", [](double, double x) { return x * x; }, [](double, double) { return 0.0; },
            [](double, double x) { return 2.0 * x; }, [](double, double) { return 2.0; }};
}

TestFunction TestFunction::cubic() {
    return {"cubic", [](double, double x) { return x * x * x; }, [](double, double) { return 0.0; },
            [](double, double x) { return 3.0 * x * x; }, [](double, double x) { return 6.0 * x; }};
}

TestFunction TestFunction::exponential(double alpha) {
    return {"exponential", [alpha](double, double x) { return std::exp(alpha * x); },
            [](double, double) { return 0.0; }, [alpha](double, double x) { return alpha * std::exp(alpha * x); },
            [alpha](double, double x) { return alpha * alpha * std::exp(alpha * x); }};
}

TestFunction TestFunction::damped_square() {
    return {"damped_square", [](double t, double x) { return std::exp(-t) * x * x; },
            [](double t, double x) { return -std::exp(-t) * x * x; },
            [](double t, double x) { return 2.0 * std::exp(-t) * x; },
            [](double t, double) { return 2.0 * std::exp(-t); }};
}

ItoResidualReport ito_residual(const ItoIntegrandSpec& spec, const ItoPathSetup& setup,
                               BrownianQuadrature quadrature) {
    if (setup.n_steps < 1 || setup.n_paths < 1) throw ConfigError("ito_residual needs at least one path and step");
    if (!(setup.rho >= 0.0) || !(setup.horizon > 0.0)) throw ConfigError("ito_residual needs rho >= 0, horizon > 0");

    const double dt = setup.horizon / static_cast<double>(setup.n_steps);
    const TestFunction& G = spec.test;
    ItoResidualReport report;
    report.path_max_residual.assign(setup.n_paths, 0.0);
    std::vector<double> jump_mismatch(setup.n_paths, 0.0);
    std::vector<double> continuous_residual(setup.n_paths, 0.0);

    parallel_for(setup.n_paths, [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            PathRng rng(setup.seed, p);
            double x = setup.x0;
            const double g0 = G.value(0.0, x);
            double integrated = g0;
            double direct_jumps = 0.0;
            double integrated_jumps = 0.0;
            double continuous_gap = 0.0;
            double worst = 0.0;
            for (std::size_t j = 0; j < setup.n_steps; ++j) {
                const double t = static_cast<double>(j) * dt;
                const double t_next = static_cast<double>(j + 1) * dt;
                const StepDraws d = draw_step(rng, dt, setup.rho);
                const double g = spec.drift(t, x);
                const double l = spec.diffusion(t, x);
                const double k = spec.jump(t, x);
                const double gx = G.dx(t, x);
                const double gxx = G.dxx(t, x);
                const double level_shift = G.value(t, x + k) - G.value(t, x);

                const double drift_part =
                    (G.dt(t, x) + (g - k * setup.rho) * gx + 0.5 * l * l * gxx + setup.rho * level_shift) * dt;
                double brownian = l * gx * d.dw;
                double milstein = 0.0;
                if (quadrature == BrownianQuadrature::ito_taylor) {
                    const double l_prime = spec.diffusion.ds(t, x);
                    brownian += 0.5 * l * (l_prime * gx + l * gxx) * (d.dw * d.dw - dt);
                    milstein = 0.5 * l * l_prime * (d.dw * d.dw - dt);
                }
                const double compensator = -setup.rho * level_shift * dt;

                // Path: continuous move over the step, then the jumps.
                const double x_pre = x + (g - k * setup.rho) * dt + l * d.dw + milstein;
                double x_post = x_pre;
                double jump_terms = 0.0;
                double jump_direct = 0.0;
                for (std::uint32_t n = 0; n < d.dn; ++n) {
                    const double kk = spec.jump(t, x_post);
                    const double before = G.value(t_next, x_post);
                    jump_terms += G.value(t_next, x_post + kk) - before;
                    x_post += kk;
                    jump_direct += G.value(t_next, x_post) - before;
                }
                integrated += drift_part + brownian + jump_terms + compensator;
                integrated_jumps += jump_terms;
                direct_jumps += jump_direct;
                // Continuous part alone: the direct pre-jump increment against the
                // drift, compensator and Brownian pieces.
                continuous_gap += (G.value(t_next, x_pre) - G.value(t, x)) - (drift_part + brownian + compensator);

                x = x_post;
                worst = std::max(worst, std::abs(G.value(t_next, x) - integrated));
            }
            report.path_max_residual[p] = worst;
            jump_mismatch[p] = std::abs(direct_jumps - integrated_jumps);
            continuous_residual[p] = std::abs(continuous_gap);
        }
    });

    const double n = static_cast<double>(setup.n_paths);
    double sum = 0.0;
    double sum_sq = 0.0;
    double cont = 0.0;
    for (std::size_t p = 0; p < setup.n_paths; ++p) {
        sum += report.path_max_residual[p];
        sum_sq += report.path_max_residual[p] * report.path_max_residual[p];
        report.max_jump_mismatch = std::max(report.max_jump_mismatch, jump_mismatch[p]);
        cont += continuous_residual[p];
    }
    report.mean_max_residual = sum / n;
    if (setup.n_paths > 1) {
        const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
        report.stderr_max_residual = std::sqrt(var / n);
    }
    report.mean_abs_continuous_residual = cont / n;
    return report;
}

}  // namespace jumpimpact
