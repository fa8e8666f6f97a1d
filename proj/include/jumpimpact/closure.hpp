#pragma once

#include <string>

#include "jumpimpact/coefficient.hpp"

namespace jumpimpact {

/// How the share-count dynamics d(theta) = eta dt + zeta (dW + b dM) are closed.
///
/// In exogenous mode eta and zeta are evaluated directly. In self-consistent
/// mode eta is still taken from `eta`, while zeta is the fixed point of
///     zeta = sigma S theta_S / (1 - lambda S theta_S)
/// computed by the PIDE solver from the hedge surface. The feedback ratio
/// lambda S theta_S is capped at `max_feedback` (< 1).
struct StrategyClosure {
    enum class Mode { exogenous, self_consistent };

    CoefficientFunction eta = CoefficientFunction::constant(0.0);
    CoefficientFunction zeta = CoefficientFunction::constant(0.0);
    Mode mode = Mode::exogenous;
    double max_feedback = 0.9;

    [[nodiscard]] std::string fingerprint() const;
};

}  // namespace jumpimpact
