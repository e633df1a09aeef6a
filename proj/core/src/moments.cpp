// SPDX-License-Identifier: Apache-2.0
#include "kslab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "kslab/kernel.hpp"

namespace kslab {

namespace {

constexpr double kPi = std::numbers::pi;

double sqr(double v) { return v * v; }

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
struct GaussRule {
    std::vector<double> x, w;
};

const GaussRule& gauss_rule(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.w[n - 1 - i] = r.w[i];
    }
    return cache.emplace(n, std::move(r)).first->second;
}

template <typename F>
double integrate_gl(F&& f, double a, double b, int order) {
    const GaussRule& gr = gauss_rule(order);
    const double xm = 0.5 * (a + b), xr = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < static_cast<int>(gr.x.size()); ++i)
        s += gr.w[i] * f(xm + xr * gr.x[i]);
    return s * xr;
}

double psi_of_r2(double r2) { return r2 < 1.0 ? sqr(1.0 - r2) : 0.0; }

// (1/2pi) int psi(|x + rho w|^2) dphi for |x| = xr, splitting the angular
// integral at the support-boundary kink.
double angular_average(double xr, double rho, int order) {
    auto f = [&](double phi) {
        return psi_of_r2(xr * xr + rho * rho + 2.0 * xr * rho * std::cos(phi));
    };
    if (xr * rho == 0.0)
        return psi_of_r2(sqr(xr + rho));
    const double c = (1.0 - xr * xr - rho * rho) / (2.0 * xr * rho);
    if (c <= -1.0 || c >= 1.0)
        return integrate_gl(f, 0.0, kPi, order) / kPi;
    const double phis = std::acos(c);
    return (integrate_gl(f, 0.0, phis, order) + integrate_gl(f, phis, kPi, order)) / kPi;
}

// Radial panel edges splitting at the kink radii |1 - xr| and 1 + xr, with
// log grading inside each block.
std::vector<double> radial_edges(double lo, double hi, double xr, int subpanels) {
    std::vector<double> cuts{lo, hi};
    for (double c : {std::abs(1.0 - xr), 1.0 + xr})
        if (c > lo && c < hi) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> edges;
    for (std::size_t b = 0; b + 1 < cuts.size(); ++b) {
        const double a = cuts[b], bb = cuts[b + 1];
        for (int i = 0; i < subpanels; ++i)
            edges.push_back(a * std::pow(bb / a, static_cast<double>(i) / subpanels));
    }
    edges.push_back(hi);
    return edges;
}

// integral over [lo, 1+xr] of 2pi rho^{-1-alpha} (avg - psi(x)) drho plus the
// analytic far field beyond the support.
double middle_plus_far(double xr, double alpha, double lo, const QuadratureParams& qp) {
    const double px = psi_of_r2(xr * xr);
    const double hi = 1.0 + xr;
    double mid = 0.0;
    if (lo < hi) {
        auto integrand = [&](double rho) {
            return 2.0 * kPi * std::pow(rho, -1.0 - alpha) *
                   (angular_average(xr, rho, qp.angular_order) - px);
        };
        const auto edges = radial_edges(lo, hi, xr, qp.radial_subpanels);
        for (std::size_t i = 0; i + 1 < edges.size(); ++i)
            mid += integrate_gl(integrand, edges[i], edges[i + 1], qp.angular_order);
    }
    const double far = -px * 2.0 * kPi * std::pow(hi, -alpha) / alpha;
    return mid + far;
}

} // namespace

double c_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("c_alpha: alpha must lie in (0, 2)");
    return std::pow(2.0, alpha) * std::tgamma(1.0 + 0.5 * alpha) /
           (kPi * std::abs(std::tgamma(-0.5 * alpha)));
}

double psi(Point x) { return psi_of_r2(x[0] * x[0] + x[1] * x[1]); }

double psi_r(Point x, double radius) {
    return psi({x[0] / radius, x[1] / radius});
}

Point grad_psi(Point x) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    if (r2 >= 1.0) return {0.0, 0.0};
    const double f = -4.0 * (1.0 - r2);
    return {f * x[0], f * x[1]};
}

double lap_psi(Point x) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    return r2 < 1.0 ? -8.0 + 16.0 * r2 : 0.0;
}

double PsiHessian::max_eigenvalue() const {
    const double tr = xx + yy;
    const double det = xx * yy - xy * xy;
    return 0.5 * tr + std::sqrt(std::max(0.25 * tr * tr - det, 0.0));
}

PsiHessian hessian_psi(Point x) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    PsiHessian h;
    if (r2 > 1.0) return h;
    h.at_kink = (r2 == 1.0);
    // interior limit: H = -4(1-|x|^2) I + 8 x x^T
    h.xx = -4.0 * (1.0 - r2) + 8.0 * x[0] * x[0];
    h.yy = -4.0 * (1.0 - r2) + 8.0 * x[1] * x[1];
    h.xy = 8.0 * x[0] * x[1];
    return h;
}

double theta(double eps) {
    if (!(eps > 0.0 && eps < 1.0 / std::sqrt(3.0)))
        throw std::invalid_argument("theta: eps must lie in (0, 1/sqrt(3))");
    return 4.0 * (1.0 - 3.0 * eps * eps);
}

double frac_lap_psi_split(double r, double alpha, const QuadratureParams& qp) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("frac_lap_psi_split: alpha must lie in (0, 2)");
    const double delta = qp.delta;
    // inner disc: angular average of psi(x+y) - psi(x) = (rho^2/4) Lap psi + O(rho^3)
    const double inner =
        (lap_psi({r, 0.0}) / 4.0) * 2.0 * kPi * std::pow(delta, 2.0 - alpha) / (2.0 - alpha);
    const double rest = middle_plus_far(r, alpha, delta, qp);
    return -c_alpha(alpha) * (inner + rest);
}

double frac_lap_psi_symmetric(double r, double alpha, const QuadratureParams& qp) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("frac_lap_psi_symmetric: alpha must lie in (0, 2)");
    // circle averaging symmetrizes; integrable down to rho_min, with the
    // sub-rho_min sliver restored by its Taylor value
    const double lo = qp.rho_min;
    const double inner =
        (lap_psi({r, 0.0}) / 4.0) * 2.0 * kPi * std::pow(lo, 2.0 - alpha) / (2.0 - alpha);
    const double rest = middle_plus_far(r, alpha, lo, qp);
    return -c_alpha(alpha) * (inner + rest);
}

KAlphaResult k_alpha(double alpha, const QuadratureParams& qp) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::invalid_argument("k_alpha: alpha must lie in (0, 2]");
    if (alpha == 2.0) return {8.0, 0.0, 0.0};

    KAlphaResult best;
    for (double r = 0.0; r <= 2.0 + 1e-12; r += 0.05) {
        const double v = std::abs(frac_lap_psi_split(r, alpha, qp));
        if (v > best.value) {
            best.value = v;
            best.argmax_radius = r;
        }
    }
    // refine around the coarse argmax
    const double rlo = std::max(best.argmax_radius - 0.05, 0.0);
    const double rhi = best.argmax_radius + 0.05;
    for (double r = rlo; r <= rhi + 1e-12; r += 0.002) {
        const double v = std::abs(frac_lap_psi_split(r, alpha, qp));
        if (v > best.value) {
            best.value = v;
            best.argmax_radius = r;
        }
    }
    const double a = frac_lap_psi_split(best.argmax_radius, alpha, qp);
    const double b = frac_lap_psi_symmetric(best.argmax_radius, alpha, qp);
    // tracked Taylor remainder of the split rule: third-derivative bound 24
    const double remainder =
        c_alpha(alpha) * (24.0 / 6.0) * 2.0 * kPi * std::pow(qp.delta, 3.0 - alpha) / (3.0 - alpha);
    best.value = std::abs(a);
    best.error_estimate = std::abs(a - b) + remainder;
    if (best.error_estimate > qp.agree_tol * std::max(best.value, 1.0))
        throw QuadratureError("k_alpha: dual-rule disagreement beyond tolerance");
    return best;
}

double k_alpha_cached(double alpha) {
    static std::map<double, double> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(alpha);
    if (it != cache.end()) return it->second;
    const double v = k_alpha(alpha).value;
    cache.emplace(alpha, v);
    return v;
}

BumpProbe::BumpProbe(Point c, double R, double eps) : center(c), radius(R), epsilon(eps) {
    if (!(radius > 0.0))
        throw std::invalid_argument("BumpProbe: radius must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0 / std::sqrt(3.0)))
        throw std::invalid_argument("BumpProbe: epsilon must lie in (0, 1/sqrt(3))");
}

namespace {
double min_image(double d, double L) {
    d = std::remainder(d, L);
    return d;
}

template <typename W>
double probe_sum(const ScalarField& u, const BumpProbe& p, W&& weight) {
    const GridSpec& g = u.grid;
    if (!(p.radius <= g.box_length / 4.0))
        throw std::invalid_argument("probe: ball of radius R must fit inside the box (R <= L/4)");
    double s = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double dx0 = min_image(g.coord(i) - p.center[0], g.box_length);
        if (std::abs(dx0) >= p.radius) continue;
        for (int j = 0; j < g.n; ++j) {
            const double dy0 = min_image(g.coord(j) - p.center[1], g.box_length);
            const double r2 = dx0 * dx0 + dy0 * dy0;
            if (r2 >= p.radius * p.radius) continue;
            s += u.at(i, j) * weight(r2);
        }
    }
    return s * g.dx() * g.dx();
}
} // namespace

double local_moment(const ScalarField& u, const BumpProbe& probe) {
    const double invR2 = 1.0 / (probe.radius * probe.radius);
    return probe_sum(u, probe, [&](double r2) { return sqr(1.0 - r2 * invR2); });
}

double ball_mass(const ScalarField& u, const BumpProbe& probe) {
    return probe_sum(u, probe, [](double) { return 1.0; });
}

double d2psi_norm() {
    // operator norm of H psi at radius r: max(|12 r^2 - 4|, |4 r^2 - 4|)
    double best = 0.0;
    for (int i = 0; i <= 4096; ++i) {
        const double r = static_cast<double>(i) / 4096.0;
        const PsiHessian h = hessian_psi({r, 0.0});
        const double tr = h.xx + h.yy;
        const double det = h.xx * h.yy - h.xy * h.xy;
        const double disc = std::sqrt(std::max(0.25 * tr * tr - det, 0.0));
        best = std::max({best, std::abs(0.5 * tr + disc), std::abs(0.5 * tr - disc)});
    }
    return best;
}

double sup_z_dot_grad_k(double gamma) {
    double best = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double r = std::pow(10.0, -6.0 + 8.0 * i / 2000.0);
        best = std::max(best, g_gamma(r, gamma) / (2.0 * kPi));
    }
    return best;
}

double constant_C(double gamma) { return sup_z_dot_grad_k(gamma) * d2psi_norm(); }

double constant_C_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0 / std::sqrt(3.0)))
        throw std::invalid_argument("constant_C_eps: eps must lie in (0, 1/sqrt(3))");
    return 1.0 / (1.0 - sqr(1.0 - eps * eps));
}

double c_of_eps(double gamma, double eps) {
    return 3.0 * constant_C(gamma) * constant_C_eps(eps);
}

double moment_rhs_parenthesis(double slot, double w, double total, double radius, double alpha,
                              double gamma, double eps) {
    const double ka = k_alpha_cached(alpha);
    const double rpow = std::pow(radius, alpha - 2.0);
    return -ka + theta(eps) / (4.0 * kPi) * rpow * g_gamma(2.0 * eps * radius, gamma) * slot +
           c_of_eps(gamma, eps) * rpow * (w - total);
}

double moment_rhs_lower_bound(double w, double m_ball, double total, double radius, double alpha,
                              double gamma, double eps) {
    if (m_ball == 0.0) return 0.0;
    const double paren = moment_rhs_parenthesis(m_ball, w, total, radius, alpha, gamma, eps);
    return std::pow(radius, -alpha) * m_ball * paren;
}

} // namespace kslab
