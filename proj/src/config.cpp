#include "jumpimpact/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "jumpimpact/errors.hpp"

namespace jumpimpact {

namespace {

using json = nlohmann::json;

void expect_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void expect_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    expect_object(j, where);
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed) known = known || item.key() == key;
        if (!known) throw ConfigError(where + ": unknown key '" + item.key() + "'");
    }
}

double get_double(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + ": expected a number");
    return j.get<double>();
}

std::uint64_t get_u64(const json& j, const std::string& where) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
    throw ConfigError(where + ": expected a non-negative integer");
}

bool get_bool(const json& j, const std::string& where) {
    if (!j.is_boolean()) throw ConfigError(where + ": expected true or false");
    return j.get<bool>();
}

std::string get_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw ConfigError(where + ": expected a string");
    return j.get<std::string>();
}

std::vector<double> get_doubles(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(get_double(v, where));
    return out;
}

CoefficientFunction parse_coefficient(const json& j, const std::string& where) {
    if (j.is_number()) return CoefficientFunction::constant(j.get<double>());
    expect_object(j, where);
    if (!j.contains("kind")) throw ConfigError(where + ": missing 'kind'");
    const std::string kind = get_string(j.at("kind"), where + ".kind");
    if (kind == "constant") {
        expect_keys(j, {"kind", "value"}, where);
        if (!j.contains("value")) throw ConfigError(where + ": missing 'value'");
        return CoefficientFunction::constant(get_double(j.at("value"), where + ".value"));
    }
    if (kind == "affine") {
        expect_keys(j, {"kind", "intercept", "slope"}, where);
        const double c0 = j.contains("intercept") ? get_double(j.at("intercept"), where + ".intercept") : 0.0;
        const double c1 = j.contains("slope") ? get_double(j.at("slope"), where + ".slope") : 0.0;
        return CoefficientFunction::affine(c0, c1);
    }
    if (kind == "table") {
        expect_keys(j, {"kind", "s", "values"}, where);
        if (!j.contains("s") || !j.contains("values")) throw ConfigError(where + ": table needs 's' and 'values'");
        return CoefficientFunction::table(get_doubles(j.at("s"), where + ".s"),
                                          get_doubles(j.at("values"), where + ".values"));
    }
    throw ConfigError(where + ": unknown coefficient kind '" + kind + "'");
}

ModelParams parse_model(const json& j) {
    expect_keys(j, {"mu", "sigma", "r", "lambda", "rho", "a", "b", "s0", "theta0", "T"}, "model");
    ModelParams p;
    if (j.contains("mu")) p.mu = parse_coefficient(j.at("mu"), "model.mu");
    if (j.contains("sigma")) p.sigma = parse_coefficient(j.at("sigma"), "model.sigma");
    if (j.contains("r")) p.r = parse_coefficient(j.at("r"), "model.r");
    if (j.contains("lambda")) p.lambda_impact = parse_coefficient(j.at("lambda"), "model.lambda");
    if (j.contains("rho")) p.rho = get_double(j.at("rho"), "model.rho");
    if (j.contains("a")) p.a = get_double(j.at("a"), "model.a");
    if (j.contains("b")) p.b = get_double(j.at("b"), "model.b");
    if (j.contains("s0")) p.s0 = get_double(j.at("s0"), "model.s0");
    if (j.contains("theta0")) p.theta0 = get_double(j.at("theta0"), "model.theta0");
    if (j.contains("T")) p.maturity = get_double(j.at("T"), "model.T");
    return p;
}

StrategyClosure parse_closure(const json& j) {
    expect_keys(j, {"mode", "eta", "zeta", "max_feedback"}, "closure");
    StrategyClosure c;
    if (j.contains("mode")) {
        const std::string mode = get_string(j.at("mode"), "closure.mode");
        if (mode == "exogenous") {
            c.mode = StrategyClosure::Mode::exogenous;
        } else if (mode == "self_consistent") {
            c.mode = StrategyClosure::Mode::self_consistent;
        } else {
            throw ConfigError("closure.mode: expected 'exogenous' or 'self_consistent'");
        }
    }
    if (j.contains("eta")) c.eta = parse_coefficient(j.at("eta"), "closure.eta");
    if (j.contains("zeta")) c.zeta = parse_coefficient(j.at("zeta"), "closure.zeta");
    if (j.contains("max_feedback")) c.max_feedback = get_double(j.at("max_feedback"), "closure.max_feedback");
    return c;
}

GridSpec parse_grid(const json& j) {
    expect_keys(j, {"s_max", "n_space", "n_time", "align_strike"}, "grid");
    GridSpec g;
    if (j.contains("s_max")) g.s_max = get_double(j.at("s_max"), "grid.s_max");
    if (j.contains("n_space")) g.n_space = get_u64(j.at("n_space"), "grid.n_space");
    if (j.contains("n_time")) g.n_time = get_u64(j.at("n_time"), "grid.n_time");
    if (j.contains("align_strike")) g.align_strike = get_bool(j.at("align_strike"), "grid.align_strike");
    return g;
}

Payoff parse_payoff(const json& j) {
    expect_keys(j, {"kind", "strike", "s", "values"}, "payoff");
    const std::string kind = j.contains("kind") ? get_string(j.at("kind"), "payoff.kind") : "call";
    if (kind == "call" || kind == "put") {
        if (!j.contains("strike")) throw ConfigError("payoff: call/put needs 'strike'");
        const double k = get_double(j.at("strike"), "payoff.strike");
        return kind == "call" ? Payoff::call(k) : Payoff::put(k);
    }
    if (kind == "table") {
        if (!j.contains("s") || !j.contains("values")) throw ConfigError("payoff: table needs 's' and 'values'");
        return Payoff::table(get_doubles(j.at("s"), "payoff.s"), get_doubles(j.at("values"), "payoff.values"));
    }
    throw ConfigError("payoff.kind: expected 'call', 'put' or 'table'");
}

SimulationConfig parse_simulation(const json& j) {
    expect_keys(j, {"n_paths", "n_steps", "seed", "v0"}, "simulation");
    SimulationConfig s;
    if (j.contains("n_paths")) s.n_paths = get_u64(j.at("n_paths"), "simulation.n_paths");
    if (j.contains("n_steps")) s.n_steps = get_u64(j.at("n_steps"), "simulation.n_steps");
    if (j.contains("seed")) s.seed = get_u64(j.at("seed"), "simulation.seed");
    if (j.contains("v0")) s.v0 = get_double(j.at("v0"), "simulation.v0");
    return s;
}

HedgeConfig parse_hedge(const json& j) {
    expect_keys(j, {"epsilons", "include_zero", "n_steps_sweep"}, "hedge");
    HedgeConfig h;
    if (j.contains("epsilons")) h.epsilons = get_doubles(j.at("epsilons"), "hedge.epsilons");
    if (j.contains("include_zero")) h.include_zero = get_bool(j.at("include_zero"), "hedge.include_zero");
    if (j.contains("n_steps_sweep")) {
        const auto& arr = j.at("n_steps_sweep");
        if (!arr.is_array()) throw ConfigError("hedge.n_steps_sweep: expected an array");
        for (const auto& v : arr) h.n_steps_sweep.push_back(get_u64(v, "hedge.n_steps_sweep"));
    }
    return h;
}

ValidateConfig parse_validate(const json& j) {
    expect_keys(j,
                {"checks", "martingale_paths", "martingale_steps", "vertex_contexts", "ito_paths", "hedge_paths",
                 "seed"},
                "validate");
    ValidateConfig v;
    if (j.contains("checks")) {
        const auto& arr = j.at("checks");
        if (!arr.is_array()) throw ConfigError("validate.checks: expected an array of names");
        std::vector<std::string> names;
        for (const auto& n : arr) names.push_back(get_string(n, "validate.checks"));
        v.checks = std::move(names);
    }
    if (j.contains("martingale_paths")) v.martingale_paths = get_u64(j.at("martingale_paths"), "validate.martingale_paths");
    if (j.contains("martingale_steps")) v.martingale_steps = get_u64(j.at("martingale_steps"), "validate.martingale_steps");
    if (j.contains("vertex_contexts")) v.vertex_contexts = get_u64(j.at("vertex_contexts"), "validate.vertex_contexts");
    if (j.contains("ito_paths")) v.ito_paths = get_u64(j.at("ito_paths"), "validate.ito_paths");
    if (j.contains("hedge_paths")) v.hedge_paths = get_u64(j.at("hedge_paths"), "validate.hedge_paths");
    if (j.contains("seed")) v.seed = get_u64(j.at("seed"), "validate.seed");
    return v;
}

}  // namespace

std::uint64_t RunConfig::seed() const {
    if (!simulation || !simulation->seed) throw ConfigError("simulation.seed is required for this command");
    return *simulation->seed;
}

RunConfig parse_config(const std::string& text, std::optional<std::uint64_t> seed_override) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    expect_keys(root,
                {"schema_version", "command", "model", "closure", "grid", "payoff", "simulation", "hedge", "validate"},
                "config");
    if (!root.contains("schema_version")) throw ConfigError("config: missing 'schema_version'");
    if (get_u64(root.at("schema_version"), "schema_version") != static_cast<std::uint64_t>(kSchemaVersion)) {
        throw ConfigError("config: unsupported schema_version (expected 1)");
    }
    if (seed_override) {
        if (!root.contains("simulation")) root["simulation"] = json::object();
        expect_object(root["simulation"], "simulation");
        root["simulation"]["seed"] = *seed_override;
    }

    RunConfig cfg;
    if (root.contains("command")) cfg.command = get_string(root.at("command"), "command");
    if (root.contains("model")) cfg.model = parse_model(root.at("model"));
    if (root.contains("closure")) cfg.closure = parse_closure(root.at("closure"));
    if (root.contains("grid")) cfg.grid = parse_grid(root.at("grid"));
    if (root.contains("payoff")) cfg.payoff = parse_payoff(root.at("payoff"));
    if (root.contains("simulation")) cfg.simulation = parse_simulation(root.at("simulation"));
    if (root.contains("hedge")) cfg.hedge = parse_hedge(root.at("hedge"));
    if (root.contains("validate")) cfg.validate = parse_validate(root.at("validate"));
    cfg.canonical = root.dump();
    cfg.hash = fnv1a64(cfg.canonical);
    return cfg;
}

RunConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), seed_override);
}

void require_blocks(const RunConfig& cfg, const std::string& command) {
    if (cfg.command && *cfg.command != command) {
        throw ConfigError("config is for command '" + *cfg.command + "', not '" + command + "'");
    }
    auto need = [&](bool present, const char* block) {
        if (!present) throw ConfigError(std::string("command '") + command + "' needs a '" + block + "' block");
    };
    if (command == "price" || command == "hedge") {
        need(cfg.grid.has_value(), "grid");
        need(cfg.payoff.has_value(), "payoff");
    }
    if (command == "hedge" || command == "simulate") {
        need(cfg.simulation.has_value(), "simulation");
        (void)cfg.seed();
        if (command == "hedge" && cfg.simulation->n_paths < 2) {
            throw ConfigError("hedge needs simulation.n_paths >= 2 (standard error undefined)");
        }
    }
    if (command == "simulate" && cfg.closure.mode == StrategyClosure::Mode::self_consistent) {
        need(cfg.grid.has_value(), "grid");
        need(cfg.payoff.has_value(), "payoff");
    }
    if (command != "price" && command != "hedge" && command != "simulate" && command != "validate") {
        throw ConfigError("unknown command '" + command + "'");
    }
}

}  // namespace jumpimpact
