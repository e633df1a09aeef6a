// SPDX-License-Identifier: Apache-2.0
#include "kslab/spectral.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace kslab {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

struct Transformer::Impl {
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

Transformer::Transformer(const GridSpec& grid) : grid_(grid), impl_(std::make_unique<Impl>()) {
    const int n = grid_.n;
    impl_->buf = fftw_alloc_complex(grid_.size());
    if (!impl_->buf) throw std::bad_alloc();
    std::lock_guard<std::mutex> lock(planner_mutex());
    impl_->fwd = fftw_plan_dft_2d(n, n, impl_->buf, impl_->buf, FFTW_FORWARD, FFTW_ESTIMATE);
    impl_->bwd = fftw_plan_dft_2d(n, n, impl_->buf, impl_->buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!impl_->fwd || !impl_->bwd) throw std::runtime_error("Transformer: FFTW planning failed");
}

Transformer::~Transformer() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
    if (impl_->bwd) fftw_destroy_plan(impl_->bwd);
    if (impl_->buf) fftw_free(impl_->buf);
}

void Transformer::forward(const double* in, std::complex<double>* out) {
    const std::size_t m = grid_.size();
    for (std::size_t i = 0; i < m; ++i) {
        impl_->buf[i][0] = in[i];
        impl_->buf[i][1] = 0.0;
    }
    fftw_execute(impl_->fwd);
    for (std::size_t i = 0; i < m; ++i)
        out[i] = {impl_->buf[i][0], impl_->buf[i][1]};
}

void Transformer::inverse(const std::complex<double>* in, double* out) {
    const std::size_t m = grid_.size();
    for (std::size_t i = 0; i < m; ++i) {
        impl_->buf[i][0] = in[i].real();
        impl_->buf[i][1] = in[i].imag();
    }
    fftw_execute(impl_->bwd);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i)
        out[i] = impl_->buf[i][0] * scale;
}

SpectralField Transformer::forward(const ScalarField& f) {
    detail::require_same_grid(grid_, f.grid, "Transformer::forward");
    SpectralField out(grid_);
    forward(f.values.data(), out.modes.data());
    return out;
}

ScalarField Transformer::inverse(const SpectralField& f) {
    detail::require_same_grid(grid_, f.grid, "Transformer::inverse");
    ScalarField out(grid_);
    inverse(f.modes.data(), out.values.data());
    return out;
}

SpectralField forward_transform(const ScalarField& f) {
    Transformer tr(f.grid);
    return tr.forward(f);
}

ScalarField inverse_transform(const SpectralField& f) {
    Transformer tr(f.grid);
    return tr.inverse(f);
}

} // namespace kslab
