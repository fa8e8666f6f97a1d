#pragma once

#include <string>
#include <vector>

#include "jumpimpact/checks.hpp"
#include "jumpimpact/config.hpp"

namespace jumpimpact {

struct Artifact {
    std::string file_name;
    std::string content;
};

struct CommandResult {
    std::vector<Artifact> files;
    /// Human-readable lines for stdout; may contain wall times, so it is
    /// never written to the output directory.
    std::vector<std::string> report;
    std::vector<CheckResult> checks;
    [[nodiscard]] bool all_checks_passed() const;
};

// Each command validates the config first (ConfigError, ModelValidationError)
// and lets solver errors propagate.

/// price_surface.csv, hedge_surface.csv, price_summary.txt
[[nodiscard]] CommandResult cmd_price(const RunConfig& config);
/// replication.csv
[[nodiscard]] CommandResult cmd_hedge(const RunConfig& config);
/// paths.csv
[[nodiscard]] CommandResult cmd_simulate(const RunConfig& config);
/// validate_report.csv; checks default to check_names() when not listed.
[[nodiscard]] CommandResult cmd_validate(const RunConfig& config);

[[nodiscard]] CommandResult run_command(const std::string& command, const RunConfig& config);

/// Creates out_dir if needed and writes every artifact atomically.
void write_artifacts(const CommandResult& result, const std::string& out_dir);

}  // namespace jumpimpact
