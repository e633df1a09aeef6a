// SPDX-License-Identifier: Apache-2.0
#ifndef KSLAB_GRID_HPP
#define KSLAB_GRID_HPP

#include <array>
#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace kslab {

using Point = std::array<double, 2>;

/// Uniform periodic grid on the square box [-L/2, L/2)^2 with N points per axis.
/// Wavenumbers are integer multiples of 2*pi/L.
struct GridSpec {
    int n = 0;
    double box_length = 0.0;

    GridSpec() = default;
    GridSpec(int n_points, double length) : n(n_points), box_length(length) {
        if (n <= 0 || n % 2 != 0)
            throw std::invalid_argument("GridSpec: n must be a positive even integer");
        if (!(box_length > 0.0))
            throw std::invalid_argument("GridSpec: box_length must be positive");
    }

    double dx() const { return box_length / n; }
    std::size_t size() const { return static_cast<std::size_t>(n) * n; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n + j; }

    /// Physical coordinate of sample i along one axis, in [-L/2, L/2).
    double coord(int i) const { return (i - n / 2) * dx(); }

    /// Signed integer mode index: i <= N/2 maps to i, above to i - N.
    int mode_index(int i) const { return (i <= n / 2) ? i : i - n; }

    /// Wavenumber of mode i along one axis.
    double wavenumber(int i) const {
        return 2.0 * std::numbers::pi * mode_index(i) / box_length;
    }

    bool operator==(const GridSpec& o) const { return n == o.n && box_length == o.box_length; }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

} // namespace kslab

#endif
