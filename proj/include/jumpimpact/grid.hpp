#pragma once

#include <cstddef>
#include <vector>

namespace jumpimpact {

/// Uniform time/price mesh request. The realized mesh may move s_max slightly
/// so that the strike lands on a node (see make_grid).
struct GridSpec {
    double s_max = 300.0;
    std::size_t n_space = 400;
    std::size_t n_time = 400;
    bool align_strike = true;
};

struct Grid {
    std::vector<double> s;  // s[i] = i * ds, i = 0..n_space
    std::vector<double> t;  // t[j] = j * dt, j = 0..n_time
    double ds = 0.0;
    double dt = 0.0;

    [[nodiscard]] std::size_t n_space() const { return s.size() - 1; }
    [[nodiscard]] std::size_t n_time() const { return t.size() - 1; }
    [[nodiscard]] double s_max() const { return s.back(); }
};

/// Builds the mesh on [0, T] x [0, s_max]. When spec.align_strike is set and
/// strike > 0, ds is shrunk to strike / round(strike / ds) so the strike is a
/// node; s_max then becomes n_space * ds. Throws ConfigError on bad sizes.
[[nodiscard]] Grid make_grid(const GridSpec& spec, double maturity, double strike);

}  // namespace jumpimpact
