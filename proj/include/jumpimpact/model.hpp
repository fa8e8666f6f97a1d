#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jumpimpact/closure.hpp"
#include "jumpimpact/coefficient.hpp"
#include "jumpimpact/grid.hpp"

namespace jumpimpact {

/// Market coefficients for the proportional dynamics
///     dS/S = [mu + lambda eta] dt + [sigma + lambda zeta] dW + [a sigma + b lambda zeta] dM
///     dA   = r A dt
/// with M = N - rho t a compensated Poisson process.
struct ModelParams {
    CoefficientFunction mu = CoefficientFunction::constant(0.05);
    CoefficientFunction sigma = CoefficientFunction::constant(0.2);
    CoefficientFunction r = CoefficientFunction::constant(0.05);
    CoefficientFunction lambda_impact = CoefficientFunction::constant(0.0);
    double rho = 0.0;
    double a = 0.0;
    double b = 0.0;
    double s0 = 100.0;
    double theta0 = 0.0;
    double maturity = 1.0;

    [[nodiscard]] std::string fingerprint() const;
};

/// European payoff h(S).
class Payoff {
public:
    enum class Kind { call, put, table };

    static Payoff call(double strike);
    static Payoff put(double strike);
    /// Piecewise-linear through (nodes, values), extended linearly beyond the ends.
    static Payoff table(std::vector<double> nodes, std::vector<double> values);

    [[nodiscard]] double operator()(double s) const;

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] double strike() const { return strike_; }
    /// Magnitude used for relative tolerances (the strike for call/put).
    [[nodiscard]] double scale() const;
    /// Large-S behaviour h(S) ~ slope * S + intercept.
    [[nodiscard]] double asymptote_slope() const;
    [[nodiscard]] double asymptote_intercept() const;
    [[nodiscard]] bool nonnegative() const { return kind_ != Kind::table; }
    [[nodiscard]] std::string fingerprint() const;

private:
    Kind kind_ = Kind::call;
    double strike_ = 100.0;
    std::vector<double> nodes_;
    std::vector<double> values_;
};

/// a sigma(t,S) + b lambda(t,S) zeta: the relative price move per jump.
[[nodiscard]] double jump_loading(const ModelParams& p, double t, double s, double zeta);

/// 1 + a sigma(t,S) + b lambda(t,S) zeta, the multiplicative displacement of S
/// at a jump. This is the single implementation shared by the simulator and
/// the PIDE nonlocal term. Throws NumericalError on non-finite input and
/// ModelValidationError when S <= 0 or the factor is not positive.
[[nodiscard]] double jump_factor(const ModelParams& p, double t, double s, double zeta);

/// 64-bit FNV-1a, used for config and parameter fingerprints.
[[nodiscard]] std::uint64_t fnv1a64(const std::string& text);

struct Violation {
    std::string invariant;
    double t = 0.0;
    double s = 0.0;
    double value = 0.0;
};

struct ValidationReport {
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const { return violations.empty(); }
    [[nodiscard]] std::size_t count(const std::string& invariant) const;
    /// Human-readable digest listing at most max_lines violations.
    [[nodiscard]] std::string summary(std::size_t max_lines = 10) const;
};

/// Checks every ModelParams invariant on the mesh nodes t_j x S_i (S_i > 0).
/// Under a self-consistent closure zeta is not known before the solve, so the
/// jump factor is checked with zeta = 0 here and re-checked by the solver.
/// `strike` only affects mesh alignment (pass 0 for an unaligned mesh).
[[nodiscard]] ValidationReport validate_params(const ModelParams& params, const GridSpec& grid,
                                               const StrategyClosure& closure, double strike = 0.0);

}  // namespace jumpimpact
