// SPDX-License-Identifier: Apache-2.0
#include "kslab/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace kslab {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

// K1(x) = 1/x + ln(x/2) I1(x) - (x/4) sum_k [psi(k+1)+psi(k+2)] q^k / (k! (k+1)!),
// q = x^2/4. All terms positive past k=0, no cancellation for x <= 2.
double k1_series(double x) {
    const double q = x * x / 4.0;
    double tk = 1.0;              // q^k / (k! (k+1)!)
    double i1_sum = 0.0;          // sum for I1 / (x/2)
    double s = 0.0;               // digamma-weighted sum
    double psi1 = -kEulerGamma;   // psi(k+1)
    double psi2 = -kEulerGamma + 1.0;  // psi(k+2)
    for (int k = 0;; ) {
        s += (psi1 + psi2) * tk;
        i1_sum += tk;
        ++k;
        tk *= q / (static_cast<double>(k) * (k + 1));
        psi1 += 1.0 / k;
        psi2 += 1.0 / (k + 1);
        if (k > 3 && tk * (psi1 + psi2) < 1e-18 * s) break;
        if (k > 60) break;
    }
    const double i1 = 0.5 * x * i1_sum;
    return 1.0 / x + std::log(0.5 * x) * i1 - 0.25 * x * s;
}

// Steed's continued fraction for K_mu at mu = 0 (Temme's method), then one
// upward recurrence to order one. Converges for x >= 2.
double k1_continued_fraction(double x) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double a1 = 0.25;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= 10000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) <= eps) break;
    }
    h = a1 * h;
    const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
    return k0 * (x + 0.5 - h) / x;
}

} // namespace

double bessel_k1(double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("bessel_k1: x must be nonnegative");
    if (x == 0.0) return std::numeric_limits<double>::infinity();
    return (x <= 2.0) ? k1_series(x) : k1_continued_fraction(x);
}

} // namespace kslab
