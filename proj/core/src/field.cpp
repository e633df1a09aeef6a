// SPDX-License-Identifier: Apache-2.0
#include "kslab/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kslab {

namespace detail {
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
    if (a != b)
        throw std::invalid_argument(std::string(what) + ": fields live on different grids");
}
} // namespace detail

ScalarField::ScalarField(const GridSpec& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
        throw std::invalid_argument("ScalarField: sample count does not match grid");
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    detail::require_same_grid(grid, o.grid, "operator+=");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
    detail::require_same_grid(grid, o.grid, "operator-=");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
}

ScalarField& ScalarField::operator*=(double c) {
    for (double& v : values) v *= c;
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { a += b; return a; }
ScalarField operator-(ScalarField a, const ScalarField& b) { a -= b; return a; }
ScalarField operator*(double c, ScalarField f) { f *= c; return f; }

double VectorField::max_magnitude() const {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        m = std::max(m, std::hypot(x[i], y[i]));
    return m;
}

double lp_norm(const ScalarField& f, double p) {
    if (std::isinf(p)) return max_abs(f);
    if (!(p >= 1.0))
        throw std::invalid_argument("lp_norm: p must satisfy p >= 1 or p = infinity");
    const double da = f.grid.dx() * f.grid.dx();
    double s = 0.0;
    for (double v : f.values) s += std::pow(std::abs(v), p);
    return std::pow(s * da, 1.0 / p);
}

double total_mass(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s * f.grid.dx() * f.grid.dx();
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double min_value(const ScalarField& f) {
    double m = std::numeric_limits<double>::infinity();
    for (double v : f.values) m = std::min(m, v);
    return m;
}

bool all_finite(const ScalarField& f) {
    for (double v : f.values)
        if (!std::isfinite(v)) return false;
    return true;
}

double tail_mass(const ScalarField& f) {
    const int n = f.grid.n;
    const double L = f.grid.box_length;
    const double r0 = L / 4.0, ramp = L / 16.0;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double xi = f.grid.coord(i);
        for (int j = 0; j < n; ++j) {
            const double r = std::hypot(xi, f.grid.coord(j));
            if (r <= r0) continue;
            double w = std::min((r - r0) / ramp, 1.0);
            w = w * w * (3.0 - 2.0 * w);
            s += w * f.at(i, j);
        }
    }
    return s * f.grid.dx() * f.grid.dx();
}

ScalarField make_gaussian(const GridSpec& grid, double mass, Point center, double width) {
    if (!(width > 2.0 * grid.dx()))
        throw std::invalid_argument("make_gaussian: width must exceed 2 dx (unresolvable peak)");
    if (!(width < grid.box_length / 8.0))
        throw std::invalid_argument("make_gaussian: width must be below L/8 (periodization tails)");
    const double L = grid.box_length;
    const double amp = mass / (2.0 * std::numbers::pi * width * width);
    const double inv2w2 = 1.0 / (2.0 * width * width);
    ScalarField f(grid);
    for (int i = 0; i < grid.n; ++i) {
        const double xi = grid.coord(i);
        for (int j = 0; j < grid.n; ++j) {
            const double yj = grid.coord(j);
            double v = 0.0;
            for (int mx = -2; mx <= 2; ++mx)
                for (int my = -2; my <= 2; ++my) {
                    const double dxc = xi - center[0] + mx * L;
                    const double dyc = yj - center[1] + my * L;
                    v += std::exp(-(dxc * dxc + dyc * dyc) * inv2w2);
                }
            f.at(i, j) = amp * v;
        }
    }
    return f;
}

ScalarField make_constant(const GridSpec& grid, double value) {
    ScalarField f(grid);
    std::fill(f.values.begin(), f.values.end(), value);
    return f;
}

} // namespace kslab
