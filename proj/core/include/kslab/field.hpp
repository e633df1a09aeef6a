// SPDX-License-Identifier: Apache-2.0
#ifndef KSLAB_FIELD_HPP
#define KSLAB_FIELD_HPP

#include <string>
#include <vector>

#include "kslab/grid.hpp"

namespace kslab {

/// Real-valued samples on a periodic grid, row-major N x N.
struct ScalarField {
    GridSpec grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g) : grid(g), values(g.size(), 0.0) {}
    ScalarField(const GridSpec& g, std::vector<double> v);

    double& at(int i, int j) { return values[grid.index(i, j)]; }
    double at(int i, int j) const { return values[grid.index(i, j)]; }

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(double c);
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double c, ScalarField f);

/// Two real component arrays over a shared grid.
struct VectorField {
    GridSpec grid;
    std::vector<double> x, y;

    VectorField() = default;
    explicit VectorField(const GridSpec& g) : grid(g), x(g.size(), 0.0), y(g.size(), 0.0) {}

    /// max over samples of the Euclidean component magnitude
    double max_magnitude() const;
};

/// Riemann-sum L^p norm, (sum |f|^p dx^2)^(1/p); p may be INFINITY for max|f|.
double lp_norm(const ScalarField& f, double p);

/// sum f dx^2
double total_mass(const ScalarField& f);

double max_abs(const ScalarField& f);
double min_value(const ScalarField& f);
bool all_finite(const ScalarField& f);

/// Mass carried outside |x| < L/4, measured with a smoothstep radial window
/// ramping 0 -> 1 over [L/4, L/4 + L/16] so that band-limit ringing does not
/// register. Anything fully beyond 5L/16 counts with weight one.
double tail_mass(const ScalarField& f);

/// Periodized Gaussian of the given total mass and width (the e^{-r^2/2w^2}
/// scale). Requires width > 2 dx and width < L/8 so that both the peak and
/// the periodization tails are resolved.
ScalarField make_gaussian(const GridSpec& grid, double mass, Point center, double width);

ScalarField make_constant(const GridSpec& grid, double value);

namespace detail {
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);
}

} // namespace kslab

#endif
