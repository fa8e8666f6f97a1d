#include <gtest/gtest.h>

#include <string>

#include "jumpimpact/commands.hpp"
#include "jumpimpact/config.hpp"
#include "jumpimpact/csv.hpp"
#include "jumpimpact/errors.hpp"

using namespace jumpimpact;

namespace {

const char* kHedgeConfig = R"({
  "schema_version": 1,
  "command": "hedge",
  "model": {"mu": 0.1, "sigma": {"kind": "constant", "value": 0.2}, "r": 0.05,
            "lambda": {"kind": "affine", "intercept": 0.0, "slope": 0.0},
            "rho": 0.5, "a": 0.5, "b": 0, "s0": 100, "theta0": 0, "T": 1},
  "closure": {"mode": "exogenous", "eta": 0, "zeta": {"kind": "table", "s": [50, 150], "values": [0.1, 0.2]}},
  "grid": {"s_max": 300, "n_space": 120, "n_time": 60, "align_strike": true},
  "payoff": {"kind": "call", "strike": 100},
  "simulation": {"n_paths": 2000, "n_steps": 50, "seed": 7},
  "hedge": {"epsilons": [0.05], "include_zero": true}
})";

std::string replace(std::string text, const std::string& from, const std::string& to) {
    const auto pos = text.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    return text.replace(pos, from.size(), to);
}

}  // namespace

TEST(Config, ParsesEveryBlock) {
    const RunConfig cfg = parse_config(kHedgeConfig);
    EXPECT_EQ(cfg.command.value(), "hedge");
    EXPECT_DOUBLE_EQ(cfg.model.mu(0.0, 1.0), 0.1);
    EXPECT_DOUBLE_EQ(cfg.model.sigma(0.0, 1.0), 0.2);
    EXPECT_EQ(cfg.model.lambda_impact.kind(), CoefficientFunction::Kind::affine);
    EXPECT_DOUBLE_EQ(cfg.closure.zeta(0.0, 100.0), 0.15);
    EXPECT_EQ(cfg.grid->n_space, 120u);
    EXPECT_EQ(cfg.payoff->kind(), Payoff::Kind::call);
    EXPECT_EQ(cfg.seed(), 7u);
    EXPECT_EQ(cfg.hedge.epsilons, std::vector<double>{0.05});
    EXPECT_NO_THROW(require_blocks(cfg, "hedge"));
}

TEST(Config, RejectsUnknownKeysAnywhere) {
    EXPECT_THROW((void)parse_config(replace(kHedgeConfig, "\"command\"", "\"comand\"")), ConfigError);
    EXPECT_THROW((void)parse_config(replace(kHedgeConfig, "\"rho\"", "\"rho_typo\"")), ConfigError);
    EXPECT_THROW((void)parse_config(replace(kHedgeConfig, "\"intercept\"", "\"icept\"")), ConfigError);
    EXPECT_THROW((void)parse_config(replace(kHedgeConfig, "\"n_paths\"", "\"paths\"")), ConfigError);
}

TEST(Config, RejectsWrongTypesAndMalformedJson) {
    EXPECT_THROW((void)parse_config(replace(kHedgeConfig, "\"n_paths\": 2000", "\"n_paths\": -3")), ConfigError);
    EXPECT_THROW((void)parse_config(replace(kHedgeConfig, "\"s0\": 100", "\"s0\": \"100\"")), ConfigError);
    EXPECT_THROW((void)parse_config(replace(kHedgeConfig, "\"mode\": \"exogenous\"", "\"mode\": \"lazy\"")),
                 ConfigError);
    EXPECT_THROW((void)parse_config("{\"schema_version\": 1,"), ConfigError);
    EXPECT_THROW((void)parse_config("[]"), ConfigError);
}

TEST(Config, SchemaVersionIsRequired) {
    EXPECT_THROW((void)parse_config(replace(kHedgeConfig, "\"schema_version\": 1,", "")), ConfigError);
    EXPECT_THROW((void)parse_config(replace(kHedgeConfig, "\"schema_version\": 1", "\"schema_version\": 2")),
                 ConfigError);
}

TEST(Config, SeedIsMandatoryForSimulationCommands) {
    const RunConfig cfg = parse_config(replace(kHedgeConfig, ", \"seed\": 7", ""));
    EXPECT_THROW(require_blocks(cfg, "hedge"), ConfigError);
    RunConfig sim = cfg;
    sim.command = "simulate";
    EXPECT_THROW(require_blocks(sim, "simulate"), ConfigError);
    const RunConfig overridden = parse_config(replace(kHedgeConfig, ", \"seed\": 7", ""), 99);
    EXPECT_EQ(overridden.seed(), 99u);
}

TEST(Config, HedgeRejectsSinglePath) {
    const RunConfig cfg = parse_config(replace(kHedgeConfig, "\"n_paths\": 2000", "\"n_paths\": 1"));
    EXPECT_THROW(require_blocks(cfg, "hedge"), ConfigError);
    EXPECT_THROW((void)cmd_hedge(cfg), ConfigError);
}

TEST(Config, MissingBlocksAreReported) {
    const RunConfig cfg = parse_config(R"({"schema_version": 1, "model": {}})");
    EXPECT_THROW(require_blocks(cfg, "price"), ConfigError);
    EXPECT_NO_THROW(require_blocks(cfg, "validate"));
    EXPECT_THROW(require_blocks(parse_config(kHedgeConfig), "price"), ConfigError);  // command mismatch
}

TEST(Config, HashIsStableAndTracksTheSeed) {
    const RunConfig a = parse_config(kHedgeConfig);
    const RunConfig b = parse_config(kHedgeConfig);
    EXPECT_EQ(a.hash, b.hash);
    EXPECT_EQ(a.canonical, b.canonical);
    EXPECT_NE(parse_config(kHedgeConfig, 8).hash, a.hash);
    EXPECT_EQ(parse_config(kHedgeConfig, 7).hash, a.hash);
}

TEST(Csv, NumberFormatting) {
    EXPECT_EQ(csv::number(-0.0), "0");
    EXPECT_EQ(csv::number(0.1), "0.1");
    EXPECT_EQ(csv::number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(csv::number(123456789012345.0), "1.23456789012e+14");
    EXPECT_EQ(csv::number(-2.5), "-2.5");
}

TEST(Csv, HeaderCarriesHashAndSeed) {
    EXPECT_EQ(csv::header_comment(0xabcULL, 42), "# config_hash=0000000000000abc seed=42\n");
    EXPECT_EQ(csv::header_comment(1, std::nullopt), "# config_hash=0000000000000001 seed=none\n");
}

TEST(Commands, HedgeRowsIncludeEveryVariant) {
    const CommandResult result = cmd_hedge(parse_config(kHedgeConfig));
    ASSERT_EQ(result.files.size(), 1u);
    const std::string& text = result.files[0].content;
    EXPECT_EQ(text.rfind("# config_hash=", 0), 0u);
    EXPECT_NE(text.find("strategy,n_paths,n_steps,seed,estimate,std_error\n"), std::string::npos);
    for (const char* label : {"theta_star,", "theta_star+0.05,", "theta_star-0.05,", "constant(0),"}) {
        EXPECT_NE(text.find(label), std::string::npos) << label;
    }
}

TEST(Commands, PriceWritesBothSurfacesAndTheOracle) {
    const std::string cfg_text = R"({"schema_version": 1,
        "model": {"mu": 0.05, "sigma": 0.2, "r": 0.05},
        "grid": {"n_space": 400, "n_time": 400},
        "payoff": {"kind": "call", "strike": 100}})";
    const CommandResult result = cmd_price(parse_config(cfg_text));
    ASSERT_EQ(result.files.size(), 3u);
    EXPECT_EQ(result.files[0].file_name, "price_surface.csv");
    EXPECT_EQ(result.files[1].file_name, "hedge_surface.csv");
    const std::string& summary = result.files[2].content;
    EXPECT_NE(summary.find("f(0,100)=10.44"), std::string::npos) << summary;
    EXPECT_NE(summary.find("black_scholes=10.4505835"), std::string::npos) << summary;
    const auto rel = summary.find("rel_err=");
    ASSERT_NE(rel, std::string::npos);
    EXPECT_LE(std::stod(summary.substr(rel + 8)), 0.005);
    // 401 time rows, a header row and the hash comment
    std::size_t lines = 0;
    for (char c : result.files[0].content) lines += c == '\n';
    EXPECT_EQ(lines, 403u);
}

TEST(Commands, SimulateWritesOneRowPerPathPerStep) {
    const std::string cfg_text = R"({"schema_version": 1,
        "model": {"rho": 0.5, "a": 0.5},
        "simulation": {"n_paths": 3, "n_steps": 4, "seed": 1}})";
    const CommandResult result = cmd_simulate(parse_config(cfg_text));
    const std::string& text = result.files.at(0).content;
    EXPECT_NE(text.find("path,t,S,theta,V,A,N\n"), std::string::npos);
    std::size_t lines = 0;
    for (char c : text) lines += c == '\n';
    EXPECT_EQ(lines, 2u + 3u * 5u);
}

TEST(Commands, EmptyCheckListPassesWithAnEmptyReport) {
    const CommandResult result = cmd_validate(parse_config(R"({"schema_version": 1, "validate": {"checks": []}})"));
    EXPECT_TRUE(result.checks.empty());
    EXPECT_TRUE(result.all_checks_passed());
    EXPECT_TRUE(result.report.empty());
}

TEST(Commands, CoarseGridFailsTheBlackScholesCheck) {
    const CommandResult result = cmd_validate(parse_config(
        R"({"schema_version": 1, "grid": {"n_space": 20, "n_time": 20}, "validate": {"checks": ["bs_reduction"]}})"));
    ASSERT_EQ(result.checks.size(), 1u);
    EXPECT_FALSE(result.checks[0].passed);
    const auto pos = result.checks[0].measured.find("rel_err=");
    ASSERT_NE(pos, std::string::npos);
    EXPECT_GT(std::stod(result.checks[0].measured.substr(pos + 8)), 0.005);
}

TEST(Commands, UnknownCheckIsAConfigError) {
    EXPECT_THROW((void)cmd_validate(parse_config(R"({"schema_version": 1, "validate": {"checks": ["nope"]}})")),
                 ConfigError);
}
