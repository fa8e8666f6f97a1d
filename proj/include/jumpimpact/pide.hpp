#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "jumpimpact/closure.hpp"
#include "jumpimpact/grid.hpp"
#include "jumpimpact/model.hpp"
#include "jumpimpact/surface.hpp"

namespace jumpimpact {

struct PideOptions {
    double picard_tolerance = 1e-10;  // relative to payoff.scale()
    std::size_t picard_cap = 50;
    double zeta_tolerance = 1e-10;  // relative to 1 + max|zeta|
    std::size_t zeta_cap = 100;
};

/// Solves, backward from f(T, S) = h(S),
///
///   f_t + (mu + lambda eta - rho k) S f_S + 1/2 (sigma + lambda zeta)^2 S^2 f_SS
///       + rho (f(t, S J) - f) - r f - (mu - r + lambda eta) theta S = 0,
///
/// with k = a sigma + b lambda zeta, J = 1 + k and theta the variance-minimizing
/// hedge of the current surface. Backward Euler with IMEX splitting: the local
/// operator is implicit (one tridiagonal solve), the jump term uses the later
/// time level, and the theta coupling is resolved by Picard iteration per step.
///
/// Boundaries: the S = 0 row reduces to f_t = r f; at s_max f follows the
/// payoff's linear asymptote with the intercept discounted.
///
/// Throws ModelValidationError for invalid parameters or a non-positive jump
/// factor, NumericalError for rho dt > 1 (explicit jump term unstable) or a
/// non-finite / negative solution.
[[nodiscard]] PriceSurface solve_pide(const ModelParams& params, const StrategyClosure& closure, const GridSpec& grid,
                                      const Payoff& payoff, const PideOptions& options = {});

/// theta along one time row from the values on that row. Interior nodes use
/// central differences for f_S; S = 0 takes the limit theta = f_S and s_max a
/// one-sided second-order stencil. f(S J) is read by linear interpolation, or
/// from the discounted asymptote beyond s_max.
void hedge_row(const ModelParams& params, const Grid& grid, double t, std::span<const double> f_row,
               std::span<const double> zeta_row, double asymptote_slope, double asymptote_intercept_discounted,
               std::span<double> theta_out);

struct LiuYongReport {
    bool jumps_off = false;   // a == 0 and b == 0
    double max_abs_diff = 0.0;  // max interior |theta - central-difference f_S|
    double ds = 0.0;
    double max_abs_fss = 0.0;
    double bound = 0.0;      // 5 ds max|f_SS|
    double constant = 0.0;   // max_abs_diff / ds
    [[nodiscard]] bool within_bound() const { return max_abs_diff <= bound; }
};

/// Compares the stored hedge with the centred difference of f at interior
/// nodes of every time row. Report only; never throws.
[[nodiscard]] LiuYongReport reduce_to_liu_yong_check(const PriceSurface& surface, const ModelParams& params);

}  // namespace jumpimpact
