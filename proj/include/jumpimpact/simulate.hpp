#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "jumpimpact/closure.hpp"
#include "jumpimpact/model.hpp"
#include "jumpimpact/rng.hpp"
#include "jumpimpact/surface.hpp"

namespace jumpimpact {

/// Evaluates (eta, zeta) for a closure. Self-consistent closures read zeta from
/// a solved surface, so they need one.
class ClosureField {
public:
    /// Throws ConfigError for a self-consistent closure without a surface.
    explicit ClosureField(const StrategyClosure& closure, const PriceSurface* surface = nullptr);

    [[nodiscard]] double eta(double t, double s) const { return closure_->eta(t, s); }
    [[nodiscard]] double zeta(double t, double s) const;

private:
    const StrategyClosure* closure_;
    const PriceSurface* surface_;
};

/// Simulated trajectories, stored path-major: value(p, j) = data[p * (n_steps + 1) + j].
struct PathBundle {
    std::size_t n_paths = 0;
    std::size_t n_steps = 0;
    double dt = 0.0;
    double rho = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> time;
    std::vector<double> s;
    std::vector<double> theta;
    std::vector<double> v;
    std::vector<double> account;       // A_t, with A_0 = 1
    std::vector<std::int64_t> jumps;   // N_t
    std::vector<double> dw;            // Brownian increment over step j, stride n_steps

    [[nodiscard]] std::size_t at(std::size_t path, std::size_t step) const { return path * (n_steps + 1) + step; }
    [[nodiscard]] double dw_at(std::size_t path, std::size_t step) const { return dw[path * n_steps + step]; }
    /// M_t = N_t - rho t, reconstructed exactly from the stored counts.
    [[nodiscard]] double compensated(std::size_t path, std::size_t step) const {
        return static_cast<double>(jumps[at(path, step)]) - rho * time[step];
    }
};

/// Random inputs of one Euler step.
struct StepDraws {
    double dw = 0.0;
    std::uint32_t dn = 0;
};

[[nodiscard]] StepDraws draw_step(PathRng& rng, double dt, double rho);

/// One step of dS/S = [mu + lambda eta] dt + [sigma + lambda zeta] dW + k dM.
/// The continuous part (drift with compensator -rho k dt, plus diffusion) is
/// applied arithmetically; each of the dn jumps then multiplies S by
/// jump_factor. Throws NumericalError if the continuous factor is not positive.
[[nodiscard]] double asset_step(const ModelParams& p, double t, double s, double eta, double zeta, double dt,
                                const StepDraws& d);

/// One step of the wealth SDE. The r V dt part is integrated with the same
/// growth factor as the bank account so a zero position tracks A_t exactly.
[[nodiscard]] double wealth_step(const ModelParams& p, double t, double s, double theta, double v, double eta,
                                 double zeta, double dt, const StepDraws& d, double growth);

/// Rejects step sizes for which |drift dt| + |diffusion loading| 4 sqrt(dt) >= 1
/// at any probed node (time nodes x a geometric set of prices around s0).
void validate_step_size(const ModelParams& p, const ClosureField& closure, std::size_t n_steps);

/// Euler-Maruyama for the forward equations of theta and S, plus dA = r A dt.
/// V is left at zero; evolve_wealth fills it.
[[nodiscard]] PathBundle simulate_coupled_system(const ModelParams& params, const StrategyClosure& closure,
                                                 std::size_t n_paths, std::size_t n_steps, std::uint64_t seed,
                                                 const PriceSurface* surface = nullptr);

/// Steps V from v0 along the bundle's stored increments and theta path.
void evolve_wealth(PathBundle& bundle, const ModelParams& params, const StrategyClosure& closure, double v0,
                   const PriceSurface* surface = nullptr);

/// Overwrites theta with policy(t_j, S_j) at every node.
void apply_policy(PathBundle& bundle, const std::function<double(double, double)>& policy);

struct SelfFinancingResidual {
    double max_abs = 0.0;        // over all paths and steps
    double mean_path_max = 0.0;  // mean over paths of the per-path max
};

/// Tracks the risk-free holding psi by discrete self-financing rebalancing,
///     psi_{j+1} = psi_j - (theta_{j+1} - theta_j) S_{j+1} / A_{j+1},
/// and measures |psi A + theta S - V| against the SDE-stepped wealth.
[[nodiscard]] SelfFinancingResidual self_financing_residual(const PathBundle& bundle);

}  // namespace jumpimpact
