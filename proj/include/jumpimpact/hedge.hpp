#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "jumpimpact/closure.hpp"
#include "jumpimpact/model.hpp"
#include "jumpimpact/surface.hpp"

namespace jumpimpact {

/// Everything the variance-minimizing hedge needs at one (t, S).
struct HedgeContext {
    double s = 0.0;
    double f = 0.0;         // option value at (t, S)
    double f_s = 0.0;       // dF/dS at (t, S)
    double f_jumped = 0.0;  // option value at (t, S J), J = 1 + a sigma + b lambda zeta
    double sigma = 0.0;
    double lambda = 0.0;
    double zeta = 0.0;
    double a = 0.0;
    double b = 0.0;
    double rho = 0.0;
};

/// Local quadratic risk of holding x shares over dt:
///     l(x) = (sigma + lambda zeta)^2 S^2 (f_S - x)^2
///          + rho (f_jumped - f - x S (a sigma + b lambda zeta))^2
[[nodiscard]] double local_risk(const HedgeContext& ctx, double x);

/// Closed-form minimizer of local_risk:
///     [(sigma+lambda zeta)^2 S^2 f_S + rho S k (f_jumped - f)] / [(sigma+lambda zeta)^2 S^2 + rho S^2 k^2]
/// with k = a sigma + b lambda zeta. Throws NumericalError naming the
/// degenerate factor when the denominator vanishes.
[[nodiscard]] double theta_star(const HedgeContext& ctx);

/// Independent route to the same share count: ternary search on local_risk,
/// evaluated in quad precision, from a bracket grown around f_S down to a
/// width of 1e-12. Does not use the closed form.
[[nodiscard]] double theta_oracle(const HedgeContext& ctx);

/// Hedge share-count rule applied along simulated paths.
struct ThetaPolicy {
    enum class Kind { surface, constant, perturbed };

    Kind kind = Kind::surface;
    double constant = 0.0;  // Kind::constant
    double epsilon = 0.0;   // Kind::perturbed: theta_surface + direction * epsilon
    int direction = 1;

    static ThetaPolicy from_surface() { return {}; }
    static ThetaPolicy fixed(double shares) { return {Kind::constant, shares, 0.0, 1}; }
    static ThetaPolicy perturbed(double epsilon, int direction) { return {Kind::perturbed, 0.0, epsilon, direction}; }

    [[nodiscard]] double operator()(const PriceSurface& surface, double t, double s) const;
    [[nodiscard]] std::string label() const;
};

struct ReplicationReport {
    std::string strategy;
    double estimate = 0.0;  // sample mean of (h(S_T) - V_T)^2
    double std_error = 0.0;
    std::size_t n_paths = 0;
    std::size_t n_steps = 0;
    std::uint64_t seed = 0;
    /// Per-path squared shortfall, kept for paired comparisons.
    std::vector<double> squared_shortfall;
};

struct ReplicationRun {
    std::size_t n_paths = 10000;
    std::size_t n_steps = 200;
    std::uint64_t seed = 1;
};

/// Monte Carlo estimate of E[(h(S_T) - V_T)^2] for each policy, starting from
/// V_0 = f(0, s0). All policies see the same random numbers (one stream per
/// path). Throws ConfigError if n_paths < 2 or the surface was solved for
/// different parameters.
[[nodiscard]] std::vector<ReplicationReport> replication_error(const ModelParams& params,
                                                               const StrategyClosure& closure,
                                                               const Payoff& payoff, const PriceSurface& surface,
                                                               const std::vector<ThetaPolicy>& policies,
                                                               const ReplicationRun& run);

/// Standard error of the mean difference of two reports' per-path values.
[[nodiscard]] double paired_stderr(const ReplicationReport& x, const ReplicationReport& y);

/// Parameter fingerprint hash shared by the PIDE surface and the simulator.
[[nodiscard]] std::uint64_t params_hash(const ModelParams& params, const StrategyClosure& closure);

}  // namespace jumpimpact
