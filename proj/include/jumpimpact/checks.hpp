#pragma once

#include <string>
#include <vector>

#include "jumpimpact/config.hpp"
#include "jumpimpact/hedge.hpp"
#include "jumpimpact/model.hpp"
#include "jumpimpact/rng.hpp"

namespace jumpimpact {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string measured;
    std::string threshold;
    double seconds = 0.0;
};

/// Every check `validate` knows, in the order they run by default:
/// bs_reduction, liu_yong_reduction, vertex_equivalence, variance_optimality,
/// incompleteness, ito_residual_slope, martingale, determinism.
[[nodiscard]] const std::vector<std::string>& check_names();

/// Runs one named check. The two reductions solve on config.grid (400 x 400,
/// s_max 300 when absent); everything else uses the fixed settings below
/// with sample sizes from config.validate. Throws ConfigError for an unknown
/// name; numerical exceptions inside a check are reported as a failure.
[[nodiscard]] CheckResult run_check(const std::string& name, const RunConfig& config);

/// a = 0.5, rho = 0.5, lambda = 0, sigma = 0.2, r = mu = 0.05, S0 = K = 100, T = 1.
[[nodiscard]] ModelParams jump_config();
/// jump_config with a = 0 and rho = 0.
[[nodiscard]] ModelParams no_jump_config();

/// A valid random hedge context:
///   sigma in [0.05, 0.6], lambda in [0, 0.1], zeta in [-1, 1], a and b in
///   [-2, 2] (redrawn until 1 + a sigma + b lambda zeta > 0), rho in [0, 2],
///   S in [1, 500], f_S in [0, 1], f in [0, S], f_jumped in [0, S J].
/// Contexts whose quadratic coefficient (sigma + lambda zeta)^2 + rho k^2 is
/// below 1e-4 are redrawn.
[[nodiscard]] HedgeContext random_hedge_context(PathRng& rng);

}  // namespace jumpimpact
