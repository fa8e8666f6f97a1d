#include "jumpimpact/checks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include "jumpimpact/commands.hpp"
#include "jumpimpact/errors.hpp"
#include "jumpimpact/ito.hpp"
#include "jumpimpact/oracles.hpp"
#include "jumpimpact/parallel.hpp"
#include "jumpimpact/pide.hpp"
#include "jumpimpact/simulate.hpp"

namespace jumpimpact {

namespace {

std::string fmt(const char* pattern, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, x);
    return buf;
}

double uniform_in(PathRng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

ModelParams black_scholes_config() {
    ModelParams p;
    p.mu = CoefficientFunction::constant(0.05);
    p.sigma = CoefficientFunction::constant(0.2);
    p.r = CoefficientFunction::constant(0.05);
    return p;
}

CheckResult bs_reduction(const RunConfig& cfg) {
    CheckResult res;
    const ModelParams p = black_scholes_config();
    const GridSpec grid = cfg.grid.value_or(GridSpec{});
    const auto start = std::chrono::steady_clock::now();
    const PriceSurface surface = solve_pide(p, StrategyClosure{}, grid, Payoff::call(100.0));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double value = surface.value(0.0, 100.0);
    const double oracle = oracles::black_scholes_price({100.0, 100.0, 0.05, 0.2, 1.0});
    const double rel = std::abs(value - oracle) / oracle;
    res.passed = rel <= 0.005 && seconds <= 10.0;
    res.measured = "f(0,100)=" + fmt("%.8g", value) + " oracle=" + fmt("%.8g", oracle) + " rel_err=" + fmt("%.3e", rel);
    res.threshold = "rel_err<=5.000e-03 solve_seconds<=10";
    res.seconds = seconds;
    return res;
}

CheckResult liu_yong_reduction(const RunConfig& cfg) {
    CheckResult res;
    res.passed = true;
    const GridSpec grid = cfg.grid.value_or(GridSpec{});
    for (double lambda : {0.0, 0.05}) {
        ModelParams p = black_scholes_config();
        p.lambda_impact = CoefficientFunction::constant(lambda);
        StrategyClosure closure;
        closure.mode = StrategyClosure::Mode::self_consistent;
        const PriceSurface surface = solve_pide(p, closure, grid, Payoff::call(100.0));
        const LiuYongReport report = reduce_to_liu_yong_check(surface, p);
        res.passed = res.passed && report.jumps_off && report.within_bound();
        if (!res.measured.empty()) res.measured += " ";
        res.measured += "lambda=" + fmt("%g", lambda) + ":max_diff=" + fmt("%.3e", report.max_abs_diff) +
                        ",bound=" + fmt("%.3e", report.bound);
    }
    res.threshold = "max_diff<=5*dS*max|f_SS|";
    return res;
}

CheckResult vertex_equivalence(const RunConfig& cfg) {
    CheckResult res;
    PathRng rng(cfg.validate.seed, 0);
    std::size_t failures = 0;
    double worst = 0.0;
    for (std::size_t n = 0; n < cfg.validate.vertex_contexts; ++n) {
        const HedgeContext ctx = random_hedge_context(rng);
        const double star = theta_star(ctx);
        const double oracle = theta_oracle(ctx);
        const double scaled = std::abs(star - oracle) / (1.0 + std::abs(star));
        worst = std::max(worst, scaled);
        if (!(scaled <= 1e-10)) ++failures;
    }
    res.passed = failures == 0;
    res.measured = "contexts=" + std::to_string(cfg.validate.vertex_contexts) +
                   " failures=" + std::to_string(failures) + " worst_scaled_diff=" + fmt("%.3e", worst);
    res.threshold = "|theta_star-theta_oracle|<=1e-10*(1+|theta_star|) failures=0";
    return res;
}

CheckResult variance_optimality(const RunConfig& cfg) {
    CheckResult res;
    const auto start = std::chrono::steady_clock::now();
    const ModelParams p = jump_config();
    const StrategyClosure closure;
    const Payoff payoff = Payoff::call(100.0);
    const PriceSurface surface = solve_pide(p, closure, GridSpec{}, payoff);
    const std::vector<ThetaPolicy> policies{ThetaPolicy::from_surface(), ThetaPolicy::perturbed(0.05, 1),
                                            ThetaPolicy::perturbed(0.05, -1)};
    const auto reports =
        replication_error(p, closure, payoff, surface, policies, {cfg.validate.hedge_paths, 200, cfg.validate.seed});
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    res.passed = seconds <= 60.0;
    res.measured = "E[Pi^2](theta*)=" + fmt("%.6g", reports[0].estimate);
    for (std::size_t i = 1; i < reports.size(); ++i) {
        const double gap = reports[i].estimate - reports[0].estimate;
        const double combined = std::hypot(reports[0].std_error, reports[i].std_error);
        res.passed = res.passed && gap >= 2.0 * combined;
        res.measured += " " + reports[i].strategy + ":gap=" + fmt("%.4g", gap) + ",gap/se=" + fmt("%.3g", gap / combined);
    }
    res.threshold = "gap>=2*sqrt(se0^2+se1^2) seconds<=60";
    res.seconds = seconds;
    return res;
}

CheckResult incompleteness(const RunConfig& cfg) {
    CheckResult res;
    const StrategyClosure closure;
    const Payoff payoff = Payoff::call(100.0);
    const std::size_t n = cfg.validate.hedge_paths;
    const std::uint64_t seed = cfg.validate.seed;
    const std::vector<ThetaPolicy> star{ThetaPolicy::from_surface()};

    const ModelParams jump = jump_config();
    const PriceSurface jump_surface = solve_pide(jump, closure, GridSpec{}, payoff);
    const auto j200 = replication_error(jump, closure, payoff, jump_surface, star, {n, 200, seed})[0];
    const auto j400 = replication_error(jump, closure, payoff, jump_surface, star, {n, 400, seed})[0];
    const double significance = j400.estimate / j400.std_error;
    const double change = std::abs(j400.estimate - j200.estimate) / j200.estimate;

    const ModelParams smooth = no_jump_config();
    const PriceSurface smooth_surface = solve_pide(smooth, closure, GridSpec{}, payoff);
    const auto s50 = replication_error(smooth, closure, payoff, smooth_surface, star, {n, 50, seed})[0];
    const auto s400 = replication_error(smooth, closure, payoff, smooth_surface, star, {n, 400, seed})[0];
    const double ratio = s400.estimate / s50.estimate;

    res.passed = significance > 5.0 && change < 0.25 && ratio < 0.25;
    res.measured = "jump:E400=" + fmt("%.5g", j400.estimate) + ",E400/se=" + fmt("%.3g", significance) +
                   ",|E400-E200|/E200=" + fmt("%.3g", change) + " no_jump:E400/E50=" + fmt("%.3g", ratio);
    res.threshold = "E400/se>5 |E400-E200|/E200<0.25 no_jump_ratio<0.25";
    return res;
}

CheckResult ito_residual_slope(const RunConfig& cfg) {
    CheckResult res;
    ItoIntegrandSpec spec;
    spec.drift = CoefficientFunction::constant(0.1);
    spec.diffusion = CoefficientFunction::constant(0.2);
    spec.jump = CoefficientFunction::constant(0.3);
    spec.test = TestFunction::square();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const std::size_t steps[] = {100, 200, 400, 800};
    std::string values;
    for (std::size_t n : steps) {
        ItoPathSetup setup;
        setup.rho = 0.5;
        setup.n_paths = cfg.validate.ito_paths;
        setup.n_steps = n;
        setup.seed = cfg.validate.seed;
        const ItoResidualReport report = ito_residual(spec, setup);
        const double x = std::log2(setup.horizon / static_cast<double>(n));
        const double y = std::log2(report.mean_max_residual);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        values += (values.empty() ? "" : ",") + fmt("%.3e", report.mean_max_residual);
    }
    const double m = 4.0;
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    res.passed = std::abs(slope - 1.0) <= 0.3;
    res.measured = "slope=" + fmt("%.4f", slope) + " residuals=[" + values + "]";
    res.threshold = "|slope-1|<=0.3";
    return res;
}

CheckResult martingale(const RunConfig& cfg) {
    CheckResult res;
    const ModelParams p = jump_config();
    const std::size_t n = cfg.validate.martingale_paths;
    const PathBundle bundle = simulate_coupled_system(p, StrategyClosure{}, n, cfg.validate.martingale_steps,
                                                      cfg.validate.seed);
    double mean_m = 0.0;
    double mean_qv = 0.0;
    double sq_qv = 0.0;
    for (std::size_t path = 0; path < n; ++path) {
        mean_m += bundle.compensated(path, bundle.n_steps);
        double qv = 0.0;
        for (std::size_t j = 0; j < bundle.n_steps; ++j) qv += bundle.dw_at(path, j) * bundle.dw_at(path, j);
        mean_qv += qv;
        sq_qv += qv * qv;
    }
    const double dn = static_cast<double>(n);
    mean_m /= dn;
    mean_qv /= dn;
    const double qv_se = std::sqrt(std::max(0.0, sq_qv / dn - mean_qv * mean_qv) / (dn - 1.0));
    const double m_bound = 3.0 * std::sqrt(p.rho * p.maturity / dn);
    const double qv_z = std::abs(mean_qv - p.maturity) / qv_se;
    res.passed = std::abs(mean_m) <= m_bound && qv_z <= 5.0;
    res.measured = "mean_M_T=" + fmt("%.4e", mean_m) + " mean_QV=" + fmt("%.6f", mean_qv) +
                   " |QV-T|/se=" + fmt("%.3f", qv_z);
    res.threshold = "|mean_M_T|<=" + fmt("%.4e", m_bound) + " |QV-T|/se<=5";
    return res;
}

RunConfig determinism_config(const RunConfig& base) {
    RunConfig cfg;
    cfg.model = jump_config();
    cfg.grid = GridSpec{300.0, 60, 40, true};
    cfg.payoff = Payoff::call(100.0);
    cfg.simulation = SimulationConfig{200, 20, base.validate.seed, std::nullopt};
    cfg.hedge.n_steps_sweep = {10, 20};
    cfg.canonical = "determinism";
    cfg.hash = fnv1a64(cfg.canonical);
    return cfg;
}

struct ThreadCap {
    std::string previous;
    bool had_previous = false;
    explicit ThreadCap(const char* value) {
        if (const char* old = std::getenv(kThreadsEnvVar)) {
            previous = old;
            had_previous = true;
        }
        ::setenv(kThreadsEnvVar, value, 1);
    }
    ~ThreadCap() {
        if (had_previous) {
            ::setenv(kThreadsEnvVar, previous.c_str(), 1);
        } else {
            ::unsetenv(kThreadsEnvVar);
        }
    }
};

CheckResult determinism(const RunConfig& base) {
    CheckResult res;
    const RunConfig cfg = determinism_config(base);
    std::size_t compared = 0;
    std::size_t mismatches = 0;
    for (const char* command : {"price", "hedge", "simulate"}) {
        CommandResult first;
        CommandResult second;
        {
            ThreadCap cap("4");
            first = run_command(command, cfg);
        }
        {
            ThreadCap cap("1");
            second = run_command(command, cfg);
        }
        if (first.files.size() != second.files.size()) {
            ++mismatches;
            continue;
        }
        for (std::size_t i = 0; i < first.files.size(); ++i) {
            ++compared;
            if (first.files[i].content != second.files[i].content) ++mismatches;
        }
    }
    res.passed = mismatches == 0 && compared > 0;
    res.measured = "files_compared=" + std::to_string(compared) + " mismatches=" + std::to_string(mismatches);
    res.threshold = "byte-identical across reruns (4 vs 1 worker threads)";
    return res;
}

}  // namespace

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names{"bs_reduction",   "liu_yong_reduction", "vertex_equivalence",
                                                "variance_optimality", "incompleteness", "ito_residual_slope",
                                                "martingale",     "determinism"};
    return names;
}

CheckResult run_check(const std::string& name, const RunConfig& config) {
    CheckResult (*fn)(const RunConfig&) = nullptr;
    if (name == "bs_reduction") fn = bs_reduction;
    if (name == "liu_yong_reduction") fn = liu_yong_reduction;
    if (name == "vertex_equivalence") fn = vertex_equivalence;
    if (name == "variance_optimality") fn = variance_optimality;
    if (name == "incompleteness") fn = incompleteness;
    if (name == "ito_residual_slope") fn = ito_residual_slope;
    if (name == "martingale") fn = martingale;
    if (name == "determinism") fn = determinism;
    if (fn == nullptr) throw ConfigError("unknown check '" + name + "'");

    const auto start = std::chrono::steady_clock::now();
    CheckResult res;
    try {
        res = fn(config);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        res.passed = false;
        res.measured = std::string("error: ") + e.what();
    }
    res.name = name;
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (res.seconds == 0.0) res.seconds = total;
    return res;
}

ModelParams jump_config() {
    ModelParams p;
    p.mu = CoefficientFunction::constant(0.05);
    p.sigma = CoefficientFunction::constant(0.2);
    p.r = CoefficientFunction::constant(0.05);
    p.lambda_impact = CoefficientFunction::constant(0.0);
    p.a = 0.5;
    p.rho = 0.5;
    return p;
}

ModelParams no_jump_config() {
    ModelParams p = jump_config();
    p.a = 0.0;
    p.rho = 0.0;
    return p;
}

HedgeContext random_hedge_context(PathRng& rng) {
    for (;;) {
        HedgeContext c;
        c.sigma = uniform_in(rng, 0.05, 0.6);
        c.lambda = uniform_in(rng, 0.0, 0.1);
        c.zeta = uniform_in(rng, -1.0, 1.0);
        double jump = 0.0;
        do {
            c.a = uniform_in(rng, -2.0, 2.0);
            c.b = uniform_in(rng, -2.0, 2.0);
            jump = 1.0 + c.a * c.sigma + c.b * c.lambda * c.zeta;
        } while (jump <= 0.0);
        c.rho = uniform_in(rng, 0.0, 2.0);
        c.s = uniform_in(rng, 1.0, 500.0);
        c.f_s = uniform_in(rng, 0.0, 1.0);
        c.f = uniform_in(rng, 0.0, c.s);
        c.f_jumped = uniform_in(rng, 0.0, c.s * jump);
        const double vol = c.sigma + c.lambda * c.zeta;
        const double k = jump - 1.0;
        if (vol * vol + c.rho * k * k >= 1e-4) return c;
    }
}

}  // namespace jumpimpact
