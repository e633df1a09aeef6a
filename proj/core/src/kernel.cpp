// SPDX-License-Identifier: Apache-2.0
#include "kslab/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kslab/bessel.hpp"

namespace kslab {

MultiplierOp MultiplierOp::frac_laplacian(double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::invalid_argument("frac_laplacian: alpha must lie in (0, 2]");
    return {Kind::FracLaplacian, alpha, 0.0, 0.0};
}

MultiplierOp MultiplierOp::helmholtz_inverse(double gamma) {
    if (!(gamma >= 0.0))
        throw std::invalid_argument("helmholtz_inverse: gamma must be nonnegative");
    return {Kind::HelmholtzInverse, 2.0, gamma, 0.0};
}

MultiplierOp MultiplierOp::heat_propagator(double t, double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::invalid_argument("heat_propagator: alpha must lie in (0, 2]");
    if (!(t >= 0.0))
        throw std::invalid_argument("heat_propagator: t must be nonnegative");
    return {Kind::HeatPropagator, alpha, 0.0, t};
}

double MultiplierOp::symbol(double kmag2) const {
    switch (kind) {
        case Kind::FracLaplacian:
            return std::pow(kmag2, 0.5 * alpha);
        case Kind::HelmholtzInverse:
            return 1.0 / (kmag2 + gamma);
        case Kind::HeatPropagator:
            return std::exp(-t * std::pow(kmag2, 0.5 * alpha));
    }
    return 0.0;
}

void MultiplierOp::apply(SpectralField& f) const {
    const GridSpec& g = f.grid;
    for (int i = 0; i < g.n; ++i) {
        const double ki = g.wavenumber(i);
        for (int j = 0; j < g.n; ++j) {
            const double kj = g.wavenumber(j);
            const double k2 = ki * ki + kj * kj;
            if (k2 == 0.0) {
                if (kind == Kind::FracLaplacian) {
                    f.at(i, j) = 0.0;
                } else if (kind == Kind::HelmholtzInverse) {
                    if (gamma == 0.0)
                        f.at(i, j) = 0.0;  // mean-zero gauge
                    else
                        f.at(i, j) /= gamma;
                }
                // heat propagator leaves the zero mode untouched (mass)
                continue;
            }
            f.at(i, j) *= symbol(k2);
        }
    }
}

namespace {
ScalarField apply_op(const ScalarField& f, const MultiplierOp& op, Transformer& tr) {
    SpectralField fh = tr.forward(f);
    op.apply(fh);
    return tr.inverse(fh);
}
} // namespace

ScalarField apply_frac_laplacian(const ScalarField& f, double alpha, Transformer& tr) {
    return apply_op(f, MultiplierOp::frac_laplacian(alpha), tr);
}
ScalarField apply_frac_laplacian(const ScalarField& f, double alpha) {
    Transformer tr(f.grid);
    return apply_frac_laplacian(f, alpha, tr);
}

ScalarField helmholtz_inverse(const ScalarField& u, double gamma, Transformer& tr) {
    return apply_op(u, MultiplierOp::helmholtz_inverse(gamma), tr);
}
ScalarField helmholtz_inverse(const ScalarField& u, double gamma) {
    Transformer tr(u.grid);
    return helmholtz_inverse(u, gamma, tr);
}

ScalarField propagate_heat(const ScalarField& f, double t, double alpha, Transformer& tr) {
    return apply_op(f, MultiplierOp::heat_propagator(t, alpha), tr);
}
ScalarField propagate_heat(const ScalarField& f, double t, double alpha) {
    Transformer tr(f.grid);
    return propagate_heat(f, t, alpha, tr);
}

double g_gamma(double r, double gamma) {
    if (!(r >= 0.0)) throw std::invalid_argument("g_gamma: r must be nonnegative");
    if (!(gamma >= 0.0)) throw std::invalid_argument("g_gamma: gamma must be nonnegative");
    if (gamma == 0.0) return 1.0;
    const double z = std::sqrt(gamma) * r;
    if (z < 1e-12) return 1.0;  // z K1(z) -> 1
    if (z > 740.0) return 0.0;  // underflow guard
    return z * bessel_k1(z);
}

Point grad_K_gamma(Point x, double gamma) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    if (r2 == 0.0)
        throw std::invalid_argument("grad_K_gamma: singular at x = 0");
    const double f = -g_gamma(std::sqrt(r2), gamma) / (2.0 * std::numbers::pi * r2);
    return {f * x[0], f * x[1]};
}

KernelProfile::KernelProfile(double g) : gamma(g) {
    if (!(gamma >= 0.0))
        throw std::invalid_argument("KernelProfile: gamma must be nonnegative");
}

} // namespace kslab
