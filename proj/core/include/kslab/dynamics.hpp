// SPDX-License-Identifier: Apache-2.0
#ifndef KSLAB_DYNAMICS_HPP
#define KSLAB_DYNAMICS_HPP

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kslab/field.hpp"
#include "kslab/moments.hpp"
#include "kslab/spectral.hpp"

namespace kslab {

/// Signals non-finite values produced by a time step.
struct IntegrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SimConfig {
    double alpha = 2.0;               // diffusion exponent, (0, 2]
    double gamma = 0.0;               // consumption rate, >= 0
    GridSpec grid{256, 20.0 * std::numbers::pi};
    double t_end = 5.0;
    double dt_initial = 1e-2;         // also the dt cap
    double dt_min = 1e-5;
    double cfl_safety = 0.3;
    double blowup_linf_factor = 1e3;
    bool dealias = true;
    bool transport_enabled = true;    // false: pure (fractional) diffusion
    int diagnostic_stride = 1;
    std::vector<BumpProbe> probes;
    // When false, tail/dealias violations are recorded but do not stop the
    // run (used by diagnostic studies that compare possibly-contaminated
    // states); default keeps the guard strict.
    bool stop_on_resolution_loss = true;

    void validate() const;
};

struct SimState {
    double t = 0.0;
    ScalarField u;
};

enum class Verdict { ReachedTEnd, BlowupDetected, Unresolved };

const char* to_string(Verdict v);

struct SimOutcome {
    Verdict verdict = Verdict::ReachedTEnd;
    /// blowup time t* (BlowupDetected) or first-contamination time t-dagger
    /// (Unresolved); t_end otherwise.
    double t_stop = 0.0;
    MomentSeries diagnostics;
    SimState final_state;
    double mass_initial = 0.0;
    double mass_drift_rel = 0.0;
    std::optional<double> resolution_lost_at;
    std::optional<double> tail_violation_at;
    std::optional<double> dealias_violation_at;
    std::string note;
};

/// grad (-Delta + gamma)^{-1} u via the i k / (|k|^2 + gamma) multiplier
/// (Nyquist rows of the gradient are zeroed).
VectorField compute_velocity(const ScalarField& u, double gamma, Transformer& tr);
VectorField compute_velocity(const ScalarField& u, double gamma);

/// Two-stage exponential Runge-Kutta integrator with the exact e^{-dt |k|^alpha}
/// linear propagator and pseudo-spectral transport term (2/3-rule dealiasing).
class Stepper {
  public:
    explicit Stepper(const SimConfig& config);

    const SimConfig& config() const { return cfg_; }

    /// One step of size dt. Throws IntegrationError on non-finite values.
    SimState step(const SimState& state, double dt);

    /// Advective/diffusive CFL step size for the current state.
    double cfl_dt(const SimState& state);

    /// max |grad v| for the current state.
    double velocity_max(const ScalarField& u);

    /// Fraction of spectral energy in the dealias band.
    double dealias_energy_fraction(const ScalarField& u);

    /// Transport term N(u) = -div(u grad v), dealiased; diagnostic access.
    ScalarField transport_term(const ScalarField& u);

  private:
    struct Work;
    void nonlinear(const std::vector<std::complex<double>>& uh,
                   std::vector<std::complex<double>>& nh, double* vmax);

    SimConfig cfg_;
    Transformer tr_;
    std::vector<double> ksym_;          // |k|^alpha
    std::vector<double> kx_, ky_;        // gradient multipliers (Nyquist zeroed)
    std::vector<double> helm_;           // |k|^2 + gamma
    std::vector<char> keep_;             // 2/3-rule mask
    std::vector<std::complex<double>> scrA_, scrB_, scrC_, scrD_;
    std::vector<double> ra_, rb_, rc_;
};

/// Blowup proxy: L-infinity growth past blowup_linf_factor, or CFL collapse
/// below dt_min while the sup norm is rising.
bool detect_blowup(const SimState& state, const MomentSeries& history, const SimConfig& config);

/// Integrate from u0 with adaptive steps, diagnostics every stride, and the
/// verdict policy described in SimOutcome.
SimOutcome run(const SimConfig& config, const ScalarField& u0);

/// Diagnostics CSV: t, dt, mass, linf, l2, l4, tail_mass, then per-probe
/// w_R, M_R, rhs_lower_bound columns.
void write_diagnostics_csv(const std::filesystem::path& path, const MomentSeries& series);
MomentSeries read_diagnostics_csv(const std::filesystem::path& path);

} // namespace kslab

#endif
