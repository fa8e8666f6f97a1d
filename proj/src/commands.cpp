#include "jumpimpact/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "jumpimpact/csv.hpp"
#include "jumpimpact/errors.hpp"
#include "jumpimpact/hedge.hpp"
#include "jumpimpact/oracles.hpp"
#include "jumpimpact/pide.hpp"
#include "jumpimpact/simulate.hpp"

namespace jumpimpact {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double strike_of(const std::optional<Payoff>& payoff) {
    if (!payoff || payoff->kind() == Payoff::Kind::table) return 0.0;
    return payoff->strike();
}

void validate_model(const RunConfig& cfg) {
    const ValidationReport report =
        validate_params(cfg.model, cfg.grid.value_or(GridSpec{}), cfg.closure, strike_of(cfg.payoff));
    if (!report.ok()) throw ModelValidationError(report.summary());
}

std::optional<double> black_scholes_reference(const RunConfig& cfg) {
    const ModelParams& p = cfg.model;
    const Payoff& payoff = *cfg.payoff;
    const bool reduces = p.a == 0.0 && p.b == 0.0 && p.lambda_impact.is_zero() && p.sigma.is_constant() &&
                         p.r.is_constant() && payoff.kind() != Payoff::Kind::table;
    if (!reduces) return std::nullopt;
    const oracles::BsInputs in{p.s0, payoff.strike(), p.r.constant_value(), p.sigma.constant_value(), p.maturity};
    return payoff.kind() == Payoff::Kind::call ? oracles::black_scholes_price(in) : oracles::black_scholes_put(in);
}

std::string g12(double x) { return csv::number(x); }

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

bool CommandResult::all_checks_passed() const {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

CommandResult cmd_price(const RunConfig& cfg) {
    require_blocks(cfg, "price");
    validate_model(cfg);
    const auto start = std::chrono::steady_clock::now();
    const PriceSurface surface = solve_pide(cfg.model, cfg.closure, *cfg.grid, *cfg.payoff);
    const double wall = seconds_since(start);

    const double f0 = surface.value(0.0, cfg.model.s0);
    const SolveDiagnostics& d = surface.diagnostics;
    std::string summary = "f(0," + g12(cfg.model.s0) + ")=" + g12(f0);
    if (const auto reference = black_scholes_reference(cfg)) {
        summary += " black_scholes=" + g12(*reference) + " rel_err=" + g12(std::abs(f0 - *reference) / *reference);
    }
    summary += " picard_max=" + std::to_string(d.max_picard_iterations) +
               " picard_total=" + std::to_string(d.total_picard_iterations) +
               " picard_cap_hits=" + std::to_string(d.picard_cap_hits) +
               " worst_final_delta=" + g12(d.worst_final_delta) +
               " zeta_max_iterations=" + std::to_string(d.max_zeta_iterations) +
               " zeta_cap_hits=" + std::to_string(d.zeta_cap_hits) +
               " feedback_cap_hits=" + std::to_string(d.feedback_cap_hits) +
               " monotonicity_violations=" + std::to_string(d.monotonicity_violations);

    CommandResult out;
    out.files.push_back({"price_surface.csv", csv::surface_table(surface.grid, surface.f, cfg.hash)});
    out.files.push_back({"hedge_surface.csv", csv::surface_table(surface.grid, surface.theta, cfg.hash)});
    out.files.push_back({"price_summary.txt", csv::header_comment(cfg.hash, std::nullopt) + summary + "\n"});
    char wall_text[48];
    std::snprintf(wall_text, sizeof wall_text, " wall_seconds=%.3f", wall);
    out.report.push_back("price " + summary + wall_text);
    return out;
}

CommandResult cmd_hedge(const RunConfig& cfg) {
    require_blocks(cfg, "hedge");
    validate_model(cfg);
    const auto start = std::chrono::steady_clock::now();
    const PriceSurface surface = solve_pide(cfg.model, cfg.closure, *cfg.grid, *cfg.payoff);

    std::vector<ThetaPolicy> policies{ThetaPolicy::from_surface()};
    for (double eps : cfg.hedge.epsilons) {
        policies.push_back(ThetaPolicy::perturbed(eps, 1));
        policies.push_back(ThetaPolicy::perturbed(eps, -1));
    }
    if (cfg.hedge.include_zero) policies.push_back(ThetaPolicy::fixed(0.0));

    std::vector<std::size_t> sweep = cfg.hedge.n_steps_sweep;
    if (sweep.empty()) sweep.push_back(cfg.simulation->n_steps);

    std::vector<ReplicationReport> rows;
    for (std::size_t n_steps : sweep) {
        auto reports = replication_error(cfg.model, cfg.closure, *cfg.payoff, surface, policies,
                                         {cfg.simulation->n_paths, n_steps, cfg.seed()});
        for (auto& r : reports) {
            r.squared_shortfall.clear();
            rows.push_back(std::move(r));
        }
    }
    CommandResult out;
    out.files.push_back({"replication.csv", csv::replication_table(rows, cfg.hash, cfg.seed())});
    for (const auto& r : rows) {
        out.report.push_back("hedge " + r.strategy + " n_steps=" + std::to_string(r.n_steps) +
                             " estimate=" + g12(r.estimate) + " std_error=" + g12(r.std_error));
    }
    char wall_text[48];
    std::snprintf(wall_text, sizeof wall_text, "hedge wall_seconds=%.3f", seconds_since(start));
    out.report.push_back(wall_text);
    return out;
}

CommandResult cmd_simulate(const RunConfig& cfg) {
    require_blocks(cfg, "simulate");
    validate_model(cfg);
    const auto start = std::chrono::steady_clock::now();
    std::optional<PriceSurface> surface;
    if (cfg.grid && cfg.payoff) surface = solve_pide(cfg.model, cfg.closure, *cfg.grid, *cfg.payoff);
    const PriceSurface* surface_ptr = surface ? &*surface : nullptr;

    const SimulationConfig& sim = *cfg.simulation;
    PathBundle bundle = simulate_coupled_system(cfg.model, cfg.closure, sim.n_paths, sim.n_steps, cfg.seed(),
                                                surface_ptr);
    double v0 = cfg.model.theta0 * cfg.model.s0;
    if (sim.v0) {
        v0 = *sim.v0;
    } else if (surface) {
        v0 = surface->value(0.0, cfg.model.s0);
    }
    evolve_wealth(bundle, cfg.model, cfg.closure, v0, surface_ptr);

    CommandResult out;
    out.files.push_back({"paths.csv", csv::path_table(bundle, cfg.hash)});
    char text[128];
    std::snprintf(text, sizeof text, "simulate n_paths=%zu n_steps=%zu wall_seconds=%.3f", sim.n_paths, sim.n_steps,
                  seconds_since(start));
    out.report.push_back(text);
    return out;
}

CommandResult cmd_validate(const RunConfig& cfg) {
    require_blocks(cfg, "validate");
    const std::vector<std::string> names = cfg.validate.checks.value_or(check_names());
    for (const auto& name : names) {
        bool known = false;
        for (const auto& k : check_names()) known = known || k == name;
        if (!known) throw ConfigError("unknown check '" + name + "'");
    }
    CommandResult out;
    std::string table = csv::header_comment(cfg.hash, cfg.validate.seed) + "check,status,measured,threshold\n";
    for (const auto& name : names) {
        CheckResult r = run_check(name, cfg);
        const char* status = r.passed ? "PASS" : "FAIL";
        table += r.name + "," + status + "," + csv_quote(r.measured) + "," + csv_quote(r.threshold) + "\n";
        char seconds[32];
        std::snprintf(seconds, sizeof seconds, "%.2fs", r.seconds);
        out.report.push_back(std::string(status) + " " + r.name + " " + r.measured + " [" + r.threshold + "] " +
                             seconds);
        out.checks.push_back(std::move(r));
    }
    out.files.push_back({"validate_report.csv", table});
    return out;
}

CommandResult run_command(const std::string& command, const RunConfig& cfg) {
    if (command == "price") return cmd_price(cfg);
    if (command == "hedge") return cmd_hedge(cfg);
    if (command == "simulate") return cmd_simulate(cfg);
    if (command == "validate") return cmd_validate(cfg);
    throw ConfigError("unknown command '" + command + "'");
}

void write_artifacts(const CommandResult& result, const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + out_dir + "': " + ec.message());
    for (const auto& file : result.files) {
        csv::write_atomic((std::filesystem::path(out_dir) / file.file_name).string(), file.content);
    }
}

}  // namespace jumpimpact
