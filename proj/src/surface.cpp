#include "jumpimpact/surface.hpp"

#include <algorithm>
#include <cmath>

namespace jumpimpact {

namespace {

struct Bracket {
    std::size_t lo;
    double w;
};

Bracket locate(double x, double step, std::size_t n_intervals) {
    if (x <= 0.0) return {0, 0.0};
    const double pos = x / step;
    if (pos >= static_cast<double>(n_intervals)) return {n_intervals - 1, 1.0};
    const auto lo = static_cast<std::size_t>(pos);
    return {lo, pos - static_cast<double>(lo)};
}

double bilinear(const PriceSurface& sf, const std::vector<double>& data, double t, double s) {
    const auto [j, wt] = locate(t, sf.grid.dt, sf.grid.n_time());
    const auto [i, ws] = locate(s, sf.grid.ds, sf.grid.n_space());
    const double v00 = data[sf.index(j, i)];
    const double v01 = data[sf.index(j, i + 1)];
    const double v10 = data[sf.index(j + 1, i)];
    const double v11 = data[sf.index(j + 1, i + 1)];
    return (1.0 - wt) * ((1.0 - ws) * v00 + ws * v01) + wt * ((1.0 - ws) * v10 + ws * v11);
}

}  // namespace

double PriceSurface::value_on_row(std::size_t j, double s) const {
    if (s >= grid.s_max()) return asymptote_slope * s + asymptote_intercept * boundary_discount[j];
    const auto [i, w] = locate(s, grid.ds, grid.n_space());
    return (1.0 - w) * f[index(j, i)] + w * f[index(j, i + 1)];
}

double PriceSurface::value(double t, double s) const {
    const auto [j, wt] = locate(t, grid.dt, grid.n_time());
    return (1.0 - wt) * value_on_row(j, s) + wt * value_on_row(j + 1, s);
}

double PriceSurface::hedge(double t, double s) const { return bilinear(*this, theta, t, std::min(s, grid.s_max())); }

double PriceSurface::strategy_zeta(double t, double s) const {
    return bilinear(*this, zeta, t, std::min(s, grid.s_max()));
}

}  // namespace jumpimpact
