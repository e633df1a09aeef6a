// SPDX-License-Identifier: Apache-2.0
#ifndef KSLAB_BESSEL_HPP
#define KSLAB_BESSEL_HPP

namespace kslab {

/// Modified Bessel function of the second kind, order one, for x > 0.
/// Power series below x = 2, Steed continued fraction above; relative
/// accuracy is a few ulps throughout (checked against the Laplace-transform
/// quadrature oracle in the kernel tests).
double bessel_k1(double x);

} // namespace kslab

#endif
