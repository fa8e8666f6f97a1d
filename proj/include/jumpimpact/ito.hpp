#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "jumpimpact/coefficient.hpp"

namespace jumpimpact {

/// Test function G(t, x) with its analytic partial derivatives.
struct TestFunction {
    std::string name;
    std::function<double(double, double)> value;
    std::function<double(double, double)> dt;
    std::function<double(double, double)> dx;
    std::function<double(double, double)> dxx;

    static TestFunction linear();
    static TestFunction square();
    static TestFunction cubic();
    static TestFunction exponential(double alpha);
    /// G(t, x) = exp(-t) x^2, exercises the time derivative.
    static TestFunction damped_square();
};

/// Integrands of dX = g dt + l dW + k dM, each a function of (t, X).
struct ItoIntegrandSpec {
    CoefficientFunction drift = CoefficientFunction::constant(0.0);      // g
    CoefficientFunction diffusion = CoefficientFunction::constant(0.0);  // l
    CoefficientFunction jump = CoefficientFunction::constant(0.0);       // k
    TestFunction test = TestFunction::square();
};

struct ItoPathSetup {
    double x0 = 1.0;
    double rho = 0.5;
    double horizon = 1.0;
    std::size_t n_paths = 1000;
    std::size_t n_steps = 100;
    std::uint64_t seed = 1;
};

/// Quadrature for the Brownian integral of l G_x over one step, and the
/// matching scheme for X itself.
///   left_point : l G_x(X_j) dW, X stepped by Euler          (strong order 1/2)
///   ito_taylor : adds 1/2 l (l' G_x + l G_xx)(dW^2 - dt), X stepped by
///                Milstein (adds 1/2 l l' (dW^2 - dt))       (strong order 1)
enum class BrownianQuadrature { left_point, ito_taylor };

struct ItoResidualReport {
    std::vector<double> path_max_residual;  // max_t |direct - integrated| per path
    double mean_max_residual = 0.0;
    double stderr_max_residual = 0.0;
    /// Largest |sum of direct jump increments - sum of G(X- + k) - G(X-)| over paths.
    double max_jump_mismatch = 0.0;
    /// Mean over paths of the terminal residual of the continuous part alone.
    double mean_abs_continuous_residual = 0.0;
};

/// Simulates X on a uniform grid and compares G(t, X_t) with the right-hand
/// side of the Ito formula for jump processes, written with a compensated
/// jump integral:
///     G(0, X_0) + int [G_t + (g - k rho) G_x + 1/2 l^2 G_xx + rho (G(X + k) - G(X))] ds
///               + int l G_x dW + int [G(X- + k) - G(X-)] dM.
/// Within a step the continuous move comes first and the dN jumps are applied
/// at the step end, so X- is the pre-jump state of that step.
[[nodiscard]] ItoResidualReport ito_residual(const ItoIntegrandSpec& spec, const ItoPathSetup& setup,
                                             BrownianQuadrature quadrature = BrownianQuadrature::ito_taylor);

}  // namespace jumpimpact
