#include "jumpimpact/coefficient.hpp"

#include <algorithm>
#include <cstdio>

#include "jumpimpact/errors.hpp"

namespace jumpimpact {

namespace {

std::string hex_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}

}  // namespace

CoefficientFunction CoefficientFunction::constant(double value) {
    CoefficientFunction c;
    c.kind_ = Kind::constant;
    c.a_ = value;
    return c;
}

CoefficientFunction CoefficientFunction::affine(double intercept, double slope) {
    CoefficientFunction c;
    c.kind_ = Kind::affine;
    c.a_ = intercept;
    c.b_ = slope;
    return c;
}

CoefficientFunction CoefficientFunction::table(std::vector<double> nodes, std::vector<double> values) {
    if (nodes.empty() || nodes.size() != values.size()) {
        throw ConfigError("coefficient table needs matching, non-empty node and value lists");
    }
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (!(nodes[i] > nodes[i - 1])) {
            throw ConfigError("coefficient table nodes must be strictly increasing");
        }
    }
    CoefficientFunction c;
    c.kind_ = Kind::table;
    c.nodes_ = std::move(nodes);
    c.values_ = std::move(values);
    return c;
}

double CoefficientFunction::operator()(double /*t*/, double s) const {
    switch (kind_) {
        case Kind::constant:
            return a_;
        case Kind::affine:
            return a_ + b_ * s;
        case Kind::table: {
            if (s <= nodes_.front()) return values_.front();
            if (s >= nodes_.back()) return values_.back();
            const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), s);
            const std::size_t hi = static_cast<std::size_t>(it - nodes_.begin());
            const std::size_t lo = hi - 1;
            const double w = (s - nodes_[lo]) / (nodes_[hi] - nodes_[lo]);
            return values_[lo] + w * (values_[hi] - values_[lo]);
        }
    }
    return 0.0;
}

double CoefficientFunction::ds(double /*t*/, double s) const {
    switch (kind_) {
        case Kind::constant:
            return 0.0;
        case Kind::affine:
            return b_;
        case Kind::table: {
            if (s < nodes_.front() || s >= nodes_.back() || nodes_.size() < 2) return 0.0;
            const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), s);
            const std::size_t hi = static_cast<std::size_t>(it - nodes_.begin());
            const std::size_t lo = hi - 1;
            return (values_[hi] - values_[lo]) / (nodes_[hi] - nodes_[lo]);
        }
    }
    return 0.0;
}

bool CoefficientFunction::is_zero() const {
    switch (kind_) {
        case Kind::constant:
            return a_ == 0.0;
        case Kind::affine:
            return a_ == 0.0 && b_ == 0.0;
        case Kind::table:
            return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
    }
    return false;
}

std::string CoefficientFunction::fingerprint() const {
    std::string out;
    switch (kind_) {
        case Kind::constant:
            out = "const(" + hex_double(a_) + ")";
            break;
        case Kind::affine:
            out = "affine(" + hex_double(a_) + "," + hex_double(b_) + ")";
            break;
        case Kind::table:
            out = "table(";
            for (std::size_t i = 0; i < nodes_.size(); ++i) {
                out += hex_double(nodes_[i]) + ":" + hex_double(values_[i]) + ";";
            }
            out += ")";
            break;
    }
    return out;
}

}  // namespace jumpimpact
