// SPDX-License-Identifier: Apache-2.0
#include "kslab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kslab/kernel.hpp"

namespace kslab {

void SimConfig::validate() const {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("SimConfig: alpha in (0,2]");
    if (!(gamma >= 0.0)) throw std::invalid_argument("SimConfig: gamma >= 0");
    if (!(t_end > 0.0)) throw std::invalid_argument("SimConfig: t_end > 0");
    if (!(dt_initial > 0.0 && dt_min > 0.0 && dt_min < dt_initial))
        throw std::invalid_argument("SimConfig: need 0 < dt_min < dt_initial");
    if (!(cfl_safety > 0.0 && cfl_safety < 1.0))
        throw std::invalid_argument("SimConfig: cfl_safety in (0,1)");
    if (!(blowup_linf_factor > 0.0))
        throw std::invalid_argument("SimConfig: blowup_linf_factor > 0");
    if (diagnostic_stride < 1) throw std::invalid_argument("SimConfig: diagnostic_stride >= 1");
    for (const BumpProbe& p : probes)
        if (!(p.radius <= grid.box_length / 4.0))
            throw std::invalid_argument("SimConfig: probe radius must satisfy R <= L/4");
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::ReachedTEnd: return "ReachedTEnd";
        case Verdict::BlowupDetected: return "BlowupDetected";
        case Verdict::Unresolved: return "Unresolved";
    }
    return "?";
}

VectorField compute_velocity(const ScalarField& u, double gamma, Transformer& tr) {
    const GridSpec& g = u.grid;
    SpectralField uh = tr.forward(u);
    SpectralField gx(g), gy(g);
    for (int i = 0; i < g.n; ++i) {
        const double ki = (i == g.n / 2) ? 0.0 : g.wavenumber(i);  // Nyquist zeroed
        for (int j = 0; j < g.n; ++j) {
            const double kj = (j == g.n / 2) ? 0.0 : g.wavenumber(j);
            const double k2 = g.wavenumber(i) * g.wavenumber(i) + g.wavenumber(j) * g.wavenumber(j);
            std::complex<double> vh;
            if (k2 == 0.0)
                vh = (gamma > 0.0) ? uh.at(i, j) / gamma : 0.0;
            else
                vh = uh.at(i, j) / (k2 + gamma);
            gx.at(i, j) = std::complex<double>(0.0, ki) * vh;
            gy.at(i, j) = std::complex<double>(0.0, kj) * vh;
        }
    }
    VectorField out(g);
    ScalarField cx = tr.inverse(gx);
    ScalarField cy = tr.inverse(gy);
    out.x = std::move(cx.values);
    out.y = std::move(cy.values);
    return out;
}

VectorField compute_velocity(const ScalarField& u, double gamma) {
    Transformer tr(u.grid);
    return compute_velocity(u, gamma, tr);
}

Stepper::Stepper(const SimConfig& config) : cfg_(config), tr_(config.grid) {
    cfg_.validate();
    const GridSpec& g = cfg_.grid;
    const std::size_t m = g.size();
    ksym_.resize(m);
    kx_.resize(m);
    ky_.resize(m);
    helm_.resize(m);
    keep_.resize(m);
    for (int i = 0; i < g.n; ++i) {
        const double ki = g.wavenumber(i);
        const double gi = (i == g.n / 2) ? 0.0 : ki;
        const bool keep_i = std::abs(g.mode_index(i)) <= g.n / 3;
        for (int j = 0; j < g.n; ++j) {
            const double kj = g.wavenumber(j);
            const std::size_t idx = g.index(i, j);
            const double k2 = ki * ki + kj * kj;
            ksym_[idx] = std::pow(k2, 0.5 * cfg_.alpha);
            kx_[idx] = gi;
            ky_[idx] = (j == g.n / 2) ? 0.0 : kj;
            helm_[idx] = k2 + cfg_.gamma;
            const bool keep_j = std::abs(g.mode_index(j)) <= g.n / 3;
            keep_[idx] = (!cfg_.dealias || (keep_i && keep_j)) ? 1 : 0;
        }
    }
    scrA_.resize(m);
    scrB_.resize(m);
    scrC_.resize(m);
    scrD_.resize(m);
    ra_.resize(m);
    rb_.resize(m);
    rc_.resize(m);
}

void Stepper::nonlinear(const std::vector<std::complex<double>>& uh,
                        std::vector<std::complex<double>>& nh, double* vmax) {
    const std::size_t m = cfg_.grid.size();
    if (!cfg_.transport_enabled) {
        std::fill(nh.begin(), nh.end(), std::complex<double>(0.0, 0.0));
        if (vmax) *vmax = 0.0;
        return;
    }
    // velocity components, dealiased along with u
    for (std::size_t i = 0; i < m; ++i) {
        // gamma = 0 zero mode: mean-zero gauge
        const std::complex<double> vh = (helm_[i] == 0.0) ? 0.0 : uh[i] / helm_[i];
        const double mask = keep_[i] ? 1.0 : 0.0;
        scrA_[i] = mask * std::complex<double>(0.0, kx_[i]) * vh;
        scrB_[i] = mask * std::complex<double>(0.0, ky_[i]) * vh;
        scrC_[i] = mask * uh[i];
    }
    tr_.inverse(scrA_.data(), ra_.data());
    tr_.inverse(scrB_.data(), rb_.data());
    tr_.inverse(scrC_.data(), rc_.data());
    double vm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        vm = std::max(vm, std::max(std::abs(ra_[i]), std::abs(rb_[i])));
        const double ui = rc_[i];
        ra_[i] *= ui;
        rb_[i] *= ui;
    }
    if (vmax) *vmax = vm;
    tr_.forward(ra_.data(), scrA_.data());
    tr_.forward(rb_.data(), scrB_.data());
    for (std::size_t i = 0; i < m; ++i) {
        const double mask = keep_[i] ? 1.0 : 0.0;
        nh[i] = -mask * (std::complex<double>(0.0, kx_[i]) * scrA_[i] +
                         std::complex<double>(0.0, ky_[i]) * scrB_[i]);
    }
}

namespace {
// phi1(z) = (e^z - 1)/z, phi2(z) = (e^z - 1 - z)/z^2, stable near z = 0:
// phi1 = sum_k z^k/(k+1)!, phi2 = sum_k z^k/(k+2)!.
void phi_values(double z, double* e, double* p1, double* p2) {
    *e = std::exp(z);
    if (std::abs(z) < 0.5) {
        double s1 = 0.0, s2 = 0.0;
        double c1 = 1.0;   // z^k/(k+1)!
        double c2 = 0.5;   // z^k/(k+2)!
        for (int k = 0; k <= 16; ++k) {
            s1 += c1;
            s2 += c2;
            c1 *= z / (k + 2);
            c2 *= z / (k + 3);
        }
        *p1 = s1;
        *p2 = s2;
    } else {
        const double em1 = std::expm1(z);
        *p1 = em1 / z;
        *p2 = (em1 - z) / (z * z);
    }
}
} // namespace

SimState Stepper::step(const SimState& state, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("Stepper::step: dt must be positive");
    detail::require_same_grid(cfg_.grid, state.u.grid, "Stepper::step");
    const std::size_t m = cfg_.grid.size();
    tr_.forward(state.u.values.data(), scrC_.data());
    std::vector<std::complex<double>> uh(scrC_.begin(), scrC_.end());
    std::vector<std::complex<double>> n0(m), n1(m);
    nonlinear(uh, n0, nullptr);
    std::vector<std::complex<double>> ah(m);
    for (std::size_t i = 0; i < m; ++i) {
        double e, p1, p2;
        phi_values(-dt * ksym_[i], &e, &p1, &p2);
        ah[i] = e * uh[i] + dt * p1 * n0[i];
    }
    nonlinear(ah, n1, nullptr);
    for (std::size_t i = 0; i < m; ++i) {
        double e, p1, p2;
        phi_values(-dt * ksym_[i], &e, &p1, &p2);
        ah[i] += dt * p2 * (n1[i] - n0[i]);
    }
    SimState next;
    next.t = state.t + dt;
    next.u = ScalarField(cfg_.grid);
    tr_.inverse(ah.data(), next.u.values.data());
    if (!all_finite(next.u))
        throw IntegrationError("time step produced non-finite values");
    return next;
}

double Stepper::velocity_max(const ScalarField& u) {
    const std::size_t m = cfg_.grid.size();
    tr_.forward(u.values.data(), scrD_.data());
    std::vector<std::complex<double>> uh(scrD_.begin(), scrD_.end());
    std::vector<std::complex<double>> nh(m);
    double vmax = 0.0;
    nonlinear(uh, nh, &vmax);
    return vmax;
}

double Stepper::cfl_dt(const SimState& state) {
    const double dx = cfg_.grid.dx();
    const double vmax = velocity_max(state.u);
    const double adv = dx / std::max(vmax, 1e-300);
    return cfg_.cfl_safety * std::min(adv, std::pow(dx, cfg_.alpha));
}

double Stepper::dealias_energy_fraction(const ScalarField& u) {
    const std::size_t m = cfg_.grid.size();
    tr_.forward(u.values.data(), scrD_.data());
    double total = 0.0, high = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double e = std::norm(scrD_[i]);
        total += e;
        if (!keep_[i]) high += e;
    }
    return total > 0.0 ? high / total : 0.0;
}

ScalarField Stepper::transport_term(const ScalarField& u) {
    const std::size_t m = cfg_.grid.size();
    tr_.forward(u.values.data(), scrD_.data());
    std::vector<std::complex<double>> uh(scrD_.begin(), scrD_.end());
    std::vector<std::complex<double>> nh(m);
    nonlinear(uh, nh, nullptr);
    ScalarField out(cfg_.grid);
    tr_.inverse(nh.data(), out.values.data());
    return out;
}

bool detect_blowup(const SimState& state, const MomentSeries& history, const SimConfig& config) {
    (void)state;
    const std::size_t k = history.linf.size();
    if (k == 0) return false;
    const double linf0 = history.linf.front();
    const double linf = history.linf.back();
    if (linf > config.blowup_linf_factor * linf0) return true;
    if (k >= 2 && !history.dt_cfl.empty()) {
        const bool rising = linf > 0.999 * history.linf[k - 2];
        if (rising && history.dt_cfl.back() < config.dt_min) return true;
    }
    return false;
}

namespace {
void push_diag_sample(MomentSeries& out, const SimState& s, double dt_used, double dt_cfl,
                      double frac, const SimConfig& cfg) {
    out.t.push_back(s.t);
    out.dt.push_back(dt_used);
    out.mass.push_back(total_mass(s.u));
    out.linf.push_back(max_abs(s.u));
    out.l2.push_back(lp_norm(s.u, 2.0));
    out.l4.push_back(lp_norm(s.u, 4.0));
    out.tail.push_back(tail_mass(s.u));
    out.dt_cfl.push_back(dt_cfl);
    out.min_u.push_back(min_value(s.u));
    out.dealias_frac.push_back(frac);
    const double mass_now = out.mass.back();
    for (ProbeSeries& ps : out.probes) {
        const double w = local_moment(s.u, ps.probe);
        const double mb = ball_mass(s.u, ps.probe);
        ps.w.push_back(w);
        ps.m_ball.push_back(mb);
        ps.rhs_bound.push_back(moment_rhs_lower_bound(w, mb, mass_now, ps.probe.radius,
                                                      cfg.alpha, cfg.gamma, ps.probe.epsilon));
    }
}
} // namespace

SimOutcome run(const SimConfig& config, const ScalarField& u0) {
    config.validate();
    detail::require_same_grid(config.grid, u0.grid, "run");
    if (config.alpha < 2.0)
        k_alpha_cached(config.alpha);  // warm the quadrature before the loop

    Stepper st(config);
    SimOutcome out;
    out.mass_initial = total_mass(u0);
    out.diagnostics.mass_initial = out.mass_initial;
    for (const BumpProbe& p : config.probes)
        out.diagnostics.probes.push_back(ProbeSeries{p, {}, {}, {}});

    MomentSeries trace;  // per-step blowup-detection history (linf, dt_cfl only)
    SimState s{0.0, u0};
    const double mass_scale = std::max(std::abs(out.mass_initial), 1e-300);
    long step_index = 0;
    bool stopped_early = false;

    while (true) {
        const double frac = st.dealias_energy_fraction(s.u);
        const double dt_cfl = st.cfl_dt(s);
        trace.t.push_back(s.t);
        trace.linf.push_back(max_abs(s.u));
        trace.dt_cfl.push_back(dt_cfl);

        const double remaining = config.t_end - s.t;
        const double dt = std::min({dt_cfl, config.dt_initial, std::max(remaining, 0.0)});
        if (step_index % config.diagnostic_stride == 0 || remaining <= 0.0)
            push_diag_sample(out.diagnostics, s, dt, dt_cfl, frac, config);

        if (detect_blowup(s, trace, config)) {
            out.verdict = Verdict::BlowupDetected;
            out.t_stop = s.t;
            stopped_early = true;
            break;
        }

        const double tail = out.diagnostics.tail.empty() ? tail_mass(s.u)
                                                          : std::abs(tail_mass(s.u));
        const bool tail_bad = std::abs(tail) > 1e-6 * mass_scale;
        const bool frac_bad = frac > 1e-3;
        if ((tail_bad || frac_bad) && !out.resolution_lost_at) {
            out.resolution_lost_at = s.t;
            if (tail_bad) out.tail_violation_at = s.t;
            if (frac_bad) out.dealias_violation_at = s.t;
        }
        const bool rising =
            trace.linf.size() >= 2 && trace.linf.back() > 0.999 * trace.linf[trace.linf.size() - 2];
        if (out.resolution_lost_at && config.stop_on_resolution_loss && !rising) {
            out.verdict = Verdict::Unresolved;
            out.t_stop = *out.resolution_lost_at;
            stopped_early = true;
            break;
        }

        if (remaining <= 1e-12) break;

        try {
            s = st.step(s, dt);
        } catch (const IntegrationError& e) {
            out.verdict = Verdict::Unresolved;
            out.t_stop = s.t;
            out.note = e.what();
            stopped_early = true;
            break;
        }
        ++step_index;
    }

    if (!stopped_early) {
        if (out.resolution_lost_at) {
            out.verdict = Verdict::Unresolved;
            out.t_stop = *out.resolution_lost_at;
        } else {
            out.verdict = Verdict::ReachedTEnd;
            out.t_stop = config.t_end;
        }
    }
    // final diagnostic row if the loop broke between strides
    if (out.diagnostics.t.empty() || out.diagnostics.t.back() != s.t)
        push_diag_sample(out.diagnostics, s, 0.0, trace.dt_cfl.back(),
                         st.dealias_energy_fraction(s.u), config);

    out.final_state = std::move(s);
    const double mass_end = total_mass(out.final_state.u);
    out.mass_drift_rel = std::abs(mass_end - out.mass_initial) / mass_scale;
    return out;
}

void write_diagnostics_csv(const std::filesystem::path& path, const MomentSeries& series) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_diagnostics_csv: cannot open " + path.string());
    os << "t,dt,mass,linf,l2,l4,tail_mass";
    for (std::size_t p = 0; p < series.probes.size(); ++p)
        os << ",w_R_" << p << ",M_R_" << p << ",rhs_lower_bound_" << p;
    os << "\n";
    char buf[32];
    auto emit = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf;
    };
    for (std::size_t i = 0; i < series.size(); ++i) {
        emit(series.t[i]); os << ',';
        emit(series.dt[i]); os << ',';
        emit(series.mass[i]); os << ',';
        emit(series.linf[i]); os << ',';
        emit(series.l2[i]); os << ',';
        emit(series.l4[i]); os << ',';
        emit(series.tail[i]);
        for (const ProbeSeries& ps : series.probes) {
            os << ',';
            emit(ps.w[i]); os << ',';
            emit(ps.m_ball[i]); os << ',';
            emit(ps.rhs_bound[i]);
        }
        os << "\n";
    }
}

MomentSeries read_diagnostics_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_diagnostics_csv: cannot open " + path.string());
    std::string header;
    std::getline(is, header);
    std::size_t nprobe = 0;
    for (std::size_t pos = header.find("w_R_"); pos != std::string::npos;
         pos = header.find("w_R_", pos + 1))
        ++nprobe;
    MomentSeries out;
    out.probes.resize(nprobe);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ','))
            row.push_back(std::strtod(cell.c_str(), nullptr));
        if (row.size() != 7 + 3 * nprobe)
            throw std::runtime_error("read_diagnostics_csv: malformed row in " + path.string());
        out.t.push_back(row[0]);
        out.dt.push_back(row[1]);
        out.mass.push_back(row[2]);
        out.linf.push_back(row[3]);
        out.l2.push_back(row[4]);
        out.l4.push_back(row[5]);
        out.tail.push_back(row[6]);
        for (std::size_t p = 0; p < nprobe; ++p) {
            out.probes[p].w.push_back(row[7 + 3 * p]);
            out.probes[p].m_ball.push_back(row[8 + 3 * p]);
            out.probes[p].rhs_bound.push_back(row[9 + 3 * p]);
        }
    }
    return out;
}

} // namespace kslab
