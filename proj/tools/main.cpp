#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "jumpimpact/commands.hpp"
#include "jumpimpact/config.hpp"
#include "jumpimpact/errors.hpp"

namespace {

int fail(int code, const char* kind, const std::string& message) {
    nlohmann::json record{{"error", kind}, {"exit_code", code}, {"message", message}};
    std::cerr << record.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"jumpimpact: option pricing and hedging under price impact and jumps"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    for (const char* name : {"price", "hedge", "simulate", "validate"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "run config (JSON)")->required();
        sub->add_option("--out", out_dir, "output directory")->required();
        sub->add_option("--seed", seed, "override simulation.seed");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return jumpimpact::exit_code::config;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    using namespace jumpimpact;
    try {
        const RunConfig config = load_config(config_path, seed);
        const CommandResult result = run_command(command, config);
        write_artifacts(result, out_dir);
        for (const auto& line : result.report) std::cout << line << "\n";
        if (!result.all_checks_passed()) {
            for (const auto& c : result.checks) {
                if (!c.passed) fail(exit_code::check_failure, "check", "check '" + c.name + "' failed: " + c.measured);
            }
            return exit_code::check_failure;
        }
        return exit_code::ok;
    } catch (const ConfigError& e) {
        return fail(exit_code::config, "config", e.what());
    } catch (const ModelValidationError& e) {
        return fail(exit_code::model_validation, "model_validation", e.what());
    } catch (const NumericalError& e) {
        return fail(exit_code::numerical, "numerical", e.what());
    } catch (const std::exception& e) {
        return fail(exit_code::config, "io", e.what());
    }
}
