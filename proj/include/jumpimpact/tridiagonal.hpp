#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jumpimpact {

/// Thomas algorithm for lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i].
/// lower[0] and upper[n-1] are ignored. No pivoting: callers supply diagonally
/// dominant systems. `scratch` is resized as needed and can be reused.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag, std::span<const double> upper,
                       std::span<const double> rhs, std::span<double> x, std::vector<double>& scratch);

}  // namespace jumpimpact
