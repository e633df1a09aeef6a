// SPDX-License-Identifier: Apache-2.0
#ifndef KSLAB_KERNEL_HPP
#define KSLAB_KERNEL_HPP

#include "kslab/field.hpp"
#include "kslab/spectral.hpp"

namespace kslab {

/// Fourier-multiplier operator on the periodic grid.
struct MultiplierOp {
    enum class Kind { FracLaplacian, HelmholtzInverse, HeatPropagator };

    Kind kind;
    double alpha = 2.0;  // FracLaplacian, HeatPropagator: alpha in (0,2]
    double gamma = 0.0;  // HelmholtzInverse: gamma >= 0
    double t = 0.0;      // HeatPropagator: t >= 0

    static MultiplierOp frac_laplacian(double alpha);
    static MultiplierOp helmholtz_inverse(double gamma);
    static MultiplierOp heat_propagator(double t, double alpha);

    double symbol(double kmag2) const;

    /// Multiply the modes by the symbol. For the gamma = 0 Helmholtz inverse
    /// the zero mode is set to 0 (mean-zero gauge).
    void apply(SpectralField& f) const;
};

/// (-Delta)^{alpha/2} f via the |k|^alpha symbol.
ScalarField apply_frac_laplacian(const ScalarField& f, double alpha, Transformer& tr);
ScalarField apply_frac_laplacian(const ScalarField& f, double alpha);

/// Solve Delta v - gamma v + u = 0 spectrally: v_hat = u_hat / (|k|^2 + gamma).
ScalarField helmholtz_inverse(const ScalarField& u, double gamma, Transformer& tr);
ScalarField helmholtz_inverse(const ScalarField& u, double gamma);

/// e^{-t (-Delta)^{alpha/2}} f; mass preserving, identity at t = 0.
ScalarField propagate_heat(const ScalarField& f, double t, double alpha, Transformer& tr);
ScalarField propagate_heat(const ScalarField& f, double t, double alpha);

/// Radial profile of the Bessel-potential gradient:
///   grad K_gamma(x) = -(1/2pi) (x/|x|^2) g_gamma(|x|),
/// with g_gamma(r) = sqrt(gamma) r K_1(sqrt(gamma) r) and g_0 = 1.
/// g decreases from g(0) = 1 and satisfies 0 <= g <= 1.
double g_gamma(double r, double gamma);

/// The stated gradient formula; rejects evaluation at x = 0 (singular).
Point grad_K_gamma(Point x, double gamma);

/// Evaluator bundling a fixed consumption rate.
struct KernelProfile {
    double gamma = 0.0;
    explicit KernelProfile(double g);
    double g(double r) const { return g_gamma(r, gamma); }
    Point grad_K(Point x) const { return grad_K_gamma(x, gamma); }
};

} // namespace kslab

#endif
