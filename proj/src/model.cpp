#include "jumpimpact/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "jumpimpact/errors.hpp"

namespace jumpimpact {

namespace {

std::string hex_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}

double table_value(const std::vector<double>& nodes, const std::vector<double>& values, double s) {
    if (nodes.size() == 1) return values.front();
    std::size_t lo = 0;
    if (s >= nodes.back()) {
        lo = nodes.size() - 2;
    } else if (s > nodes.front()) {
        const auto it = std::upper_bound(nodes.begin(), nodes.end(), s);
        lo = static_cast<std::size_t>(it - nodes.begin()) - 1;
    }
    const double slope = (values[lo + 1] - values[lo]) / (nodes[lo + 1] - nodes[lo]);
    return values[lo] + slope * (s - nodes[lo]);
}

}  // namespace

std::string ModelParams::fingerprint() const {
    std::ostringstream os;
    os << "mu=" << mu.fingerprint() << "|sigma=" << sigma.fingerprint() << "|r=" << r.fingerprint()
       << "|lambda=" << lambda_impact.fingerprint() << "|rho=" << hex_double(rho) << "|a=" << hex_double(a)
       << "|b=" << hex_double(b) << "|s0=" << hex_double(s0) << "|theta0=" << hex_double(theta0)
       << "|T=" << hex_double(maturity);
    return os.str();
}

std::string StrategyClosure::fingerprint() const {
    return std::string(mode == Mode::exogenous ? "exogenous" : "self_consistent") + "|eta=" + eta.fingerprint() +
           "|zeta=" + zeta.fingerprint() + "|cap=" + hex_double(max_feedback);
}

Payoff Payoff::call(double strike) {
    if (!(strike > 0.0) || !std::isfinite(strike)) throw ConfigError("call strike must be positive");
    Payoff p;
    p.kind_ = Kind::call;
    p.strike_ = strike;
    return p;
}

Payoff Payoff::put(double strike) {
    if (!(strike > 0.0) || !std::isfinite(strike)) throw ConfigError("put strike must be positive");
    Payoff p;
    p.kind_ = Kind::put;
    p.strike_ = strike;
    return p;
}

Payoff Payoff::table(std::vector<double> nodes, std::vector<double> values) {
    if (nodes.size() < 2 || nodes.size() != values.size()) {
        throw ConfigError("payoff table needs at least two (S, value) pairs");
    }
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (!(nodes[i] > nodes[i - 1])) throw ConfigError("payoff table nodes must be strictly increasing");
    }
    Payoff p;
    p.kind_ = Kind::table;
    p.strike_ = 0.0;
    p.nodes_ = std::move(nodes);
    p.values_ = std::move(values);
    return p;
}

double Payoff::operator()(double s) const {
    if (!std::isfinite(s)) throw NumericalError("payoff evaluated at non-finite price");
    switch (kind_) {
        case Kind::call:
            return std::max(s - strike_, 0.0);
        case Kind::put:
            return std::max(strike_ - s, 0.0);
        case Kind::table:
            return table_value(nodes_, values_, s);
    }
    return 0.0;
}

double Payoff::scale() const {
    if (kind_ != Kind::table) return strike_;
    double m = 1.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double Payoff::asymptote_slope() const {
    switch (kind_) {
        case Kind::call:
            return 1.0;
        case Kind::put:
            return 0.0;
        case Kind::table: {
            const std::size_t n = nodes_.size();
            return (values_[n - 1] - values_[n - 2]) / (nodes_[n - 1] - nodes_[n - 2]);
        }
    }
    return 0.0;
}

double Payoff::asymptote_intercept() const {
    switch (kind_) {
        case Kind::call:
            return -strike_;
        case Kind::put:
            return 0.0;
        case Kind::table:
            return values_.back() - asymptote_slope() * nodes_.back();
    }
    return 0.0;
}

std::string Payoff::fingerprint() const {
    switch (kind_) {
        case Kind::call:
            return "call(" + hex_double(strike_) + ")";
        case Kind::put:
            return "put(" + hex_double(strike_) + ")";
        case Kind::table: {
            std::string out = "table(";
            for (std::size_t i = 0; i < nodes_.size(); ++i) {
                out += hex_double(nodes_[i]) + ":" + hex_double(values_[i]) + ";";
            }
            return out + ")";
        }
    }
    return {};
}

Grid make_grid(const GridSpec& spec, double maturity, double strike) {
    if (spec.n_space < 4) throw ConfigError("grid.n_space must be at least 4");
    if (spec.n_time < 1) throw ConfigError("grid.n_time must be at least 1");
    if (!(spec.s_max > 0.0) || !std::isfinite(spec.s_max)) throw ConfigError("grid.s_max must be positive");
    if (!(maturity > 0.0) || !std::isfinite(maturity)) throw ConfigError("maturity must be positive");

    Grid g;
    g.ds = spec.s_max / static_cast<double>(spec.n_space);
    if (spec.align_strike && strike > 0.0 && strike < spec.s_max) {
        const double steps_to_strike = std::max(1.0, std::round(strike / g.ds));
        g.ds = strike / steps_to_strike;
    }
    g.dt = maturity / static_cast<double>(spec.n_time);
    g.s.resize(spec.n_space + 1);
    for (std::size_t i = 0; i <= spec.n_space; ++i) g.s[i] = static_cast<double>(i) * g.ds;
    g.t.resize(spec.n_time + 1);
    for (std::size_t j = 0; j <= spec.n_time; ++j) g.t[j] = static_cast<double>(j) * g.dt;
    g.t.back() = maturity;
    return g;
}

double jump_loading(const ModelParams& p, double t, double s, double zeta) {
    return p.a * p.sigma(t, s) + p.b * p.lambda_impact(t, s) * zeta;
}

double jump_factor(const ModelParams& p, double t, double s, double zeta) {
    if (!std::isfinite(t) || !std::isfinite(s) || !std::isfinite(zeta)) {
        throw NumericalError("jump_factor: non-finite input");
    }
    if (!(s > 0.0)) throw ModelValidationError("jump_factor: price must be positive");
    const double factor = 1.0 + jump_loading(p, t, s, zeta);
    if (!std::isfinite(factor)) throw NumericalError("jump_factor: non-finite factor");
    if (!(factor > 0.0)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "jump factor <= 0 (factor=%.12g at t=%.12g, S=%.12g, zeta=%.12g)", factor, t,
                      s, zeta);
        throw ModelValidationError(buf);
    }
    return factor;
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::size_t ValidationReport::count(const std::string& invariant) const {
    return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                  [&](const Violation& v) { return v.invariant == invariant; }));
}

std::string ValidationReport::summary(std::size_t max_lines) const {
    if (violations.empty()) return "no violations";
    std::ostringstream os;
    os << violations.size() << " violation(s)";
    for (std::size_t i = 0; i < violations.size() && i < max_lines; ++i) {
        const auto& v = violations[i];
        char buf[200];
        std::snprintf(buf, sizeof buf, "\n  %s at t=%.12g S=%.12g (value %.12g)", v.invariant.c_str(), v.t, v.s,
                      v.value);
        os << buf;
    }
    if (violations.size() > max_lines) os << "\n  ...";
    return os.str();
}

ValidationReport validate_params(const ModelParams& params, const GridSpec& grid_spec, const StrategyClosure& closure,
                                 double strike) {
    ValidationReport report;
    auto add = [&](const char* what, double t, double s, double value) {
        report.violations.push_back({what, t, s, value});
    };

    if (!(params.s0 > 0.0) || !std::isfinite(params.s0)) add("s0 > 0", 0.0, params.s0, params.s0);
    if (!(params.maturity > 0.0) || !std::isfinite(params.maturity)) {
        add("T > 0", params.maturity, 0.0, params.maturity);
        return report;
    }
    if (!(params.rho >= 0.0) || !std::isfinite(params.rho)) add("rho >= 0", 0.0, 0.0, params.rho);
    if (!(params.theta0 >= 0.0) || !std::isfinite(params.theta0)) add("theta0 >= 0", 0.0, 0.0, params.theta0);
    if (!std::isfinite(params.a)) add("a finite", 0.0, 0.0, params.a);
    if (!std::isfinite(params.b)) add("b finite", 0.0, 0.0, params.b);
    if (!(closure.max_feedback > 0.0 && closure.max_feedback < 1.0)) {
        add("0 < max_feedback < 1", 0.0, 0.0, closure.max_feedback);
    }
    if (!report.ok()) return report;

    const Grid g = make_grid(grid_spec, params.maturity, strike);
    const bool exogenous = closure.mode == StrategyClosure::Mode::exogenous;
    for (double t : g.t) {
        for (std::size_t i = 1; i < g.s.size(); ++i) {
            const double s = g.s[i];
            const double sig = params.sigma(t, s);
            const double rate = params.r(t, s);
            const double lam = params.lambda_impact(t, s);
            const double mu = params.mu(t, s);
            if (!std::isfinite(mu)) add("mu finite", t, s, mu);
            if (!(sig > 0.0) || !std::isfinite(sig)) add("sigma > 0", t, s, sig);
            if (!(rate >= 0.0) || !std::isfinite(rate)) add("r >= 0", t, s, rate);
            if (!(lam >= 0.0) || !std::isfinite(lam)) add("lambda >= 0", t, s, lam);
            const double zeta = exogenous ? closure.zeta(t, s) : 0.0;
            const double factor = 1.0 + jump_loading(params, t, s, zeta);
            if (!(factor > 0.0)) add("jump factor <= 0", t, s, factor);
        }
    }
    return report;
}

}  // namespace jumpimpact
