// SPDX-License-Identifier: Apache-2.0
#ifndef KSLAB_MOMENTS_HPP
#define KSLAB_MOMENTS_HPP

#include <stdexcept>
#include <vector>

#include "kslab/field.hpp"
#include "kslab/grid.hpp"

namespace kslab {

/// Thrown when a singular-integral quadrature fails to converge to its
/// requested tolerance.
struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- bump function psi(x) = (1 - |x|^2)_+^2 and its derivatives ----

double psi(Point x);
double psi_r(Point x, double radius);
Point grad_psi(Point x);
double lap_psi(Point x);

struct PsiHessian {
    double xx = 0, xy = 0, yy = 0;
    bool at_kink = false;  // query hit |x| = 1; interior limit returned
    double max_eigenvalue() const;
};
PsiHessian hessian_psi(Point x);

/// Concavity constant theta(eps) = 4 (1 - 3 eps^2) valid on |x| <= eps,
/// eps in (0, 1/sqrt 3).
double theta(double eps);

// ---- fractional Laplacian of psi: certified sup bound k_alpha ----

struct QuadratureParams {
    double delta = 0.005;      // Taylor split radius of the P.V. rule
    int angular_order = 32;    // Gauss-Legendre points per angular segment
    int radial_subpanels = 12; // log-graded subpanels per radial block
    double rho_min = 1e-6;     // inner cutoff of the symmetric rule
    double agree_tol = 1e-3;   // relative disagreement that trips QuadratureError
};

/// Pointwise (-Delta)^{alpha/2} psi at radius r, P.V. form split at |y| < delta
/// with the second-order Taylor term integrated analytically.
double frac_lap_psi_split(double r, double alpha, const QuadratureParams& qp = {});

/// Same quantity through the symmetric-difference form (no principal value).
double frac_lap_psi_symmetric(double r, double alpha, const QuadratureParams& qp = {});

struct KAlphaResult {
    double value = 0;
    double error_estimate = 0;
    double argmax_radius = 0;
};

/// sup_x |(-Delta)^{alpha/2} psi(x)|. Exactly 8 for alpha = 2; quadrature
/// otherwise, cross-checked between the two rules.
KAlphaResult k_alpha(double alpha, const QuadratureParams& qp = {});

/// Cached k_alpha value (exact 8 at alpha = 2).
double k_alpha_cached(double alpha);

/// 2D normalization constant of the P.V. representation, consistent with the
/// |xi|^alpha Fourier symbol.
double c_alpha(double alpha);

// ---- truncated moments ----

struct BumpProbe {
    Point center{0.0, 0.0};
    double radius = 1.0;
    double epsilon = 0.3;

    BumpProbe() = default;
    BumpProbe(Point c, double R, double eps);
};

/// w_R = sum u psi_R(x - x0) dx^2 (periodic minimum-image distance).
double local_moment(const ScalarField& u, const BumpProbe& probe);

/// M_R = sum over the ball |x - x0| < R of u dx^2.
double ball_mass(const ScalarField& u, const BumpProbe& probe);

// ---- constants of the moment inequality ----

/// Operator norm of the psi Hessian over the disc (eigenvalue maximization).
double d2psi_norm();

/// sup over radii of |z . grad K_gamma(z)| = (1/2pi) sup g_gamma.
double sup_z_dot_grad_k(double gamma);

/// C = sup|z . grad K_gamma(z)| * ||D^2 psi||_inf.
double constant_C(double gamma);

/// C_eps = (1 - (1 - eps^2)^2)^{-1}.
double constant_C_eps(double eps);

/// C(eps) = 3 C C_eps.
double c_of_eps(double gamma, double eps);

/// Parenthesized expression of the moment-growth inequality with the given
/// value in the quadratic slot:
///   -k_alpha + (theta(eps)/4pi) R^{alpha-2} g_gamma(2 eps R) slot
///   + C(eps) R^{alpha-2} (w - M).
double moment_rhs_parenthesis(double slot, double w, double total, double radius, double alpha,
                              double gamma, double eps);

/// First line of the moment-growth inequality: R^{-alpha} M_R (parenthesis),
/// with M_R in the quadratic slot. Callers apply it only where the
/// parenthesis is nonnegative.
double moment_rhs_lower_bound(double w, double m_ball, double total, double radius, double alpha,
                              double gamma, double eps);

// ---- diagnostics containers ----

struct ProbeSeries {
    BumpProbe probe;
    std::vector<double> w, m_ball, rhs_bound;
};

struct MomentSeries {
    std::vector<double> t, dt, mass, linf, l2, l4, tail;
    std::vector<ProbeSeries> probes;
    // solver-internal traces, not part of the diagnostics CSV
    std::vector<double> dt_cfl, min_u, dealias_frac;
    double mass_initial = 0.0;
    std::size_t size() const { return t.size(); }
};

} // namespace kslab

#endif
