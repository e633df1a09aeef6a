// SPDX-License-Identifier: Apache-2.0
#ifndef KSLAB_SPECTRAL_HPP
#define KSLAB_SPECTRAL_HPP

#include <complex>
#include <memory>
#include <vector>

#include "kslab/field.hpp"
#include "kslab/grid.hpp"

namespace kslab {

/// Complex Fourier coefficients, unshifted DFT layout, row-major N x N.
/// forward_transform is the plain unnormalized DFT (constant field c maps to
/// a zero mode of value c N^2); inverse_transform divides by N^2.
struct SpectralField {
    GridSpec grid;
    std::vector<std::complex<double>> modes;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g) : grid(g), modes(g.size()) {}

    std::complex<double>& at(int i, int j) { return modes[grid.index(i, j)]; }
    std::complex<double> at(int i, int j) const { return modes[grid.index(i, j)]; }
};

/// FFTW-backed transforms for one grid. Each instance owns its plans and
/// scratch buffer; concurrent workers use one Transformer each. Plan creation
/// is serialized internally (the FFTW planner is not thread-safe).
class Transformer {
  public:
    explicit Transformer(const GridSpec& grid);
    ~Transformer();

    Transformer(const Transformer&) = delete;
    Transformer& operator=(const Transformer&) = delete;

    const GridSpec& grid() const { return grid_; }

    SpectralField forward(const ScalarField& f);
    ScalarField inverse(const SpectralField& f);

    /// In-place variants over caller-provided buffers of grid.size() entries.
    void forward(const double* in, std::complex<double>* out);
    void inverse(const std::complex<double>* in, double* out);

  private:
    struct Impl;
    GridSpec grid_;
    std::unique_ptr<Impl> impl_;
};

SpectralField forward_transform(const ScalarField& f);
ScalarField inverse_transform(const SpectralField& f);

} // namespace kslab

#endif
