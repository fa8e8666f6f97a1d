#include "jumpimpact/tridiagonal.hpp"

#include "jumpimpact/errors.hpp"

namespace jumpimpact {

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag, std::span<const double> upper,
                       std::span<const double> rhs, std::span<double> x, std::vector<double>& scratch) {
    const std::size_t n = diag.size();
    if (n == 0) return;
    if (lower.size() != n || upper.size() != n || rhs.size() != n || x.size() != n) {
        throw NumericalError("tridiagonal system: size mismatch");
    }
    scratch.resize(n);
    double denom = diag[0];
    if (denom == 0.0) throw NumericalError("tridiagonal system: zero pivot");
    scratch[0] = upper[0] / denom;
    x[0] = rhs[0] / denom;
    for (std::size_t i = 1; i < n; ++i) {
        denom = diag[i] - lower[i] * scratch[i - 1];
        if (denom == 0.0) throw NumericalError("tridiagonal system: zero pivot");
        scratch[i] = (i + 1 < n) ? upper[i] / denom : 0.0;
        x[i] = (rhs[i] - lower[i] * x[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= scratch[i] * x[i + 1];
}

}  // namespace jumpimpact
