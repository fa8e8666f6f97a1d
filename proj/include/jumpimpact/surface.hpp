#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "jumpimpact/grid.hpp"

namespace jumpimpact {

struct SolveDiagnostics {
    std::size_t max_picard_iterations = 0;
    std::size_t total_picard_iterations = 0;
    std::size_t picard_cap_hits = 0;  // steps that stopped at the iteration cap
    double worst_final_delta = 0.0;   // largest last sup-norm update over all steps
    std::size_t max_zeta_iterations = 0;
    std::size_t zeta_cap_hits = 0;
    std::size_t feedback_cap_hits = 0;        // nodes where lambda S theta_S was capped
    std::size_t monotonicity_violations = 0;  // implicit rows with a positive off-diagonal
};

/// Option value f(t, S) and hedge theta(t, S) on the solver mesh, stored
/// row-major with one row per time node.
struct PriceSurface {
    Grid grid;
    std::vector<double> f;
    std::vector<double> theta;
    std::vector<double> zeta;
    /// Discount factor from t_j to maturity at the upper boundary, and the
    /// payoff's large-S asymptote; together they extend f beyond s_max.
    std::vector<double> boundary_discount;
    double asymptote_slope = 0.0;
    double asymptote_intercept = 0.0;
    std::uint64_t params_hash = 0;
    SolveDiagnostics diagnostics;

    [[nodiscard]] std::size_t index(std::size_t j, std::size_t i) const { return j * grid.s.size() + i; }
    [[nodiscard]] double f_at(std::size_t j, std::size_t i) const { return f[index(j, i)]; }
    [[nodiscard]] double theta_at(std::size_t j, std::size_t i) const { return theta[index(j, i)]; }

    /// f at time node j and arbitrary S >= 0: linear interpolation inside the
    /// mesh, the discounted linear asymptote beyond s_max.
    [[nodiscard]] double value_on_row(std::size_t j, double s) const;
    /// Bilinear interpolation in (t, S); S beyond s_max uses the asymptote.
    [[nodiscard]] double value(double t, double s) const;
    /// Bilinear interpolation of theta, clamped to the mesh in S.
    [[nodiscard]] double hedge(double t, double s) const;
    [[nodiscard]] double strategy_zeta(double t, double s) const;
};

}  // namespace jumpimpact
