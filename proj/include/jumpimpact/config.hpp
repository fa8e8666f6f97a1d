#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jumpimpact/closure.hpp"
#include "jumpimpact/grid.hpp"
#include "jumpimpact/model.hpp"

namespace jumpimpact {

inline constexpr int kSchemaVersion = 1;

struct SimulationConfig {
    std::size_t n_paths = 1000;
    std::size_t n_steps = 100;
    std::optional<std::uint64_t> seed;
    std::optional<double> v0;
};

struct HedgeConfig {
    std::vector<double> epsilons{0.05};
    bool include_zero = true;
    std::vector<std::size_t> n_steps_sweep;
};

struct ValidateConfig {
    std::optional<std::vector<std::string>> checks;  // absent: run every check
    std::size_t martingale_paths = 100000;
    std::size_t martingale_steps = 10;
    std::size_t vertex_contexts = 1000;
    std::size_t ito_paths = 1000;
    std::size_t hedge_paths = 10000;
    std::uint64_t seed = 20240601;
};

/// One run, parsed strictly from JSON: unknown keys anywhere are rejected.
struct RunConfig {
    std::optional<std::string> command;
    ModelParams model;
    StrategyClosure closure;
    std::optional<GridSpec> grid;
    std::optional<Payoff> payoff;
    std::optional<SimulationConfig> simulation;
    HedgeConfig hedge;
    ValidateConfig validate;

    std::string canonical;  // sorted-key JSON of the effective config
    std::uint64_t hash = 0;

    /// The seed for simulate/hedge; throws ConfigError when absent.
    [[nodiscard]] std::uint64_t seed() const;
};

/// Throws ConfigError on malformed JSON, unknown keys, wrong types or a
/// schema_version other than kSchemaVersion. A seed override replaces
/// simulation.seed (creating the simulation block if needed) before hashing.
[[nodiscard]] RunConfig parse_config(const std::string& json_text,
                                     std::optional<std::uint64_t> seed_override = std::nullopt);
[[nodiscard]] RunConfig load_config(const std::string& path,
                                    std::optional<std::uint64_t> seed_override = std::nullopt);

/// Checks that the blocks a command needs are present; throws ConfigError.
void require_blocks(const RunConfig& config, const std::string& command);

}  // namespace jumpimpact
