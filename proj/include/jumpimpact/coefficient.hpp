#pragma once

#include <string>
#include <vector>

namespace jumpimpact {

/// A model coefficient c(t, S) from a small closed family.
///
///   constant : c(t, S) = value
///   affine   : c(t, S) = intercept + slope * S
///   table    : piecewise-linear in S through (nodes, values), clamped
///              to the end values outside the node range
///
/// None of the kinds depend on t today; the signature keeps t so callers
/// never need to change when a time-dependent kind is added.
class CoefficientFunction {
public:
    enum class Kind { constant, affine, table };

    CoefficientFunction() = default;

    static CoefficientFunction constant(double value);
    static CoefficientFunction affine(double intercept, double slope);
    /// Throws ConfigError unless nodes are strictly increasing and sizes match.
    static CoefficientFunction table(std::vector<double> nodes, std::vector<double> values);

    [[nodiscard]] double operator()(double t, double s) const;
    /// Partial derivative in S (one-sided slope at table nodes, zero in the clamped region).
    [[nodiscard]] double ds(double t, double s) const;

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] bool is_constant() const { return kind_ == Kind::constant; }
    /// True when the function is identically zero.
    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] double constant_value() const { return a_; }
    [[nodiscard]] double intercept() const { return a_; }
    [[nodiscard]] double slope() const { return b_; }
    [[nodiscard]] const std::vector<double>& nodes() const { return nodes_; }
    [[nodiscard]] const std::vector<double>& values() const { return values_; }

    /// Canonical text form used for hashing and diagnostics.
    [[nodiscard]] std::string fingerprint() const;

private:
    Kind kind_ = Kind::constant;
    double a_ = 0.0;
    double b_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> values_;
};

}  // namespace jumpimpact
