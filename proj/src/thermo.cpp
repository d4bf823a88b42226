#include "qotto/thermo.hpp"

#include <cmath>
#include <stdexcept>

#include "qotto/oracle.hpp"

namespace qotto {

namespace {

// Step for the central differences behind the heat-rate split: resolves the
// fastest of the Rabi precession and the field rotation.
double fd_step(const FieldProtocol& p) {
    const double fastest = std::max(rabi_omega(p), std::abs(p.omega));
    return 1e-4 / (fastest > 0.0 ? fastest : p.omega_j);
}

// sin(Omega t / 2) / Omega, continued through Omega -> 0 by its series in
// x = Omega t / 2; the branch point 1e-8 keeps the result exact to rounding.
double half_period_sine(double rabi, double t) {
    const double x = 0.5 * rabi * t;
    if (std::abs(x) < 1e-8) {
        return 0.5 * t * (1.0 - x * x / 6.0);
    }
    return std::sin(x) / rabi;
}

}  // namespace

Complex coherence_sum(const FieldProtocol& p, const DensityMatrix& rho, double t, Units u) {
    const EigenFrame frame = eigenframe(p, t, u);
    const ComplexMat2 dh = dh_dt(p, t, u);
    const ComplexMat2& m = rho.matrix();
    const Complex rho_pm = matrix_element(frame.chi_plus, m, frame.chi_minus);
    return rho_pm * matrix_element(frame.chi_minus, dh, frame.chi_plus) +
           std::conj(rho_pm) * matrix_element(frame.chi_plus, dh, frame.chi_minus);
}

double coherence_power(const FieldProtocol& p, const DensityMatrix& rho, double t, Units u) {
    return coherence_sum(p, rho, t, u).real();
}

double adiabaticity_residual(const FieldProtocol& p, const DensityMatrix& rho_start, double t,
                             Units u) {
    const double diag_rate = fd_population_rate(p, rho_start, t, fd_step(p), u);
    return diag_rate - coherence_power(p, evolve_stroke(p, rho_start, t), t, u);
}

double coherence_work(double omega_end, double omega_start, double alpha, const BathSpec& bath,
                      double t, double omega, Units u) {
    const FieldProtocol p = make_protocol(omega_end, alpha, omega, std::abs(t));
    if (!std::isfinite(omega_start) || omega_start <= 0.0) {
        throw std::invalid_argument("coherence_work: omega_start must be finite and > 0");
    }
    const double s = half_period_sine(rabi_omega(p), t);
    const double sa = std::sin(alpha);
    return u.hbar * omega * omega_end * omega_end * sa * sa *
           std::tanh(0.5 * bath.beta * u.hbar * omega_start) * s * s;
}

double sudden_work(double omega_end, double omega_start, double alpha, const BathSpec& bath,
                   double t, double omega, Units u) {
    const FieldProtocol p = make_protocol(omega_end, alpha, omega, std::abs(t));
    const FieldProtocol start_axis = make_protocol(omega_start, 0.0, omega, 0.0);
    const FieldProtocol end_axis = make_protocol(omega_end, 0.0, omega, 0.0);
    const DensityMatrix rho_th = thermal_state(omega_start, bath, u);
    const DensityMatrix rho_t = evolve_stroke(p, rho_th, t);
    const double switch_on =
        trace((hamiltonian(p, 0.0, u) - hamiltonian(start_axis, 0.0, u)) * rho_th.matrix()).real();
    const double switch_off =
        trace((hamiltonian(end_axis, t, u) - hamiltonian(p, t, u)) * rho_t.matrix()).real();
    return switch_on + switch_off;
}

StrokeLedger stroke_ledger(const FieldProtocol& p, const BathSpec& bath, double omega_start,
                           int samples, Units u) {
    validate(p);
    if (samples < 2) {
        throw std::invalid_argument("stroke_ledger: samples must be >= 2");
    }
    const DensityMatrix rho_th = thermal_state(omega_start, bath, u);
    const double h = fd_step(p);

    StrokeLedger ledger;
    ledger.trace.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double t = p.duration * static_cast<double>(k) / static_cast<double>(samples - 1);
        const Complex sum = coherence_sum(p, evolve_stroke(p, rho_th, t), t, u);
        const double diag_rate = fd_population_rate(p, rho_th, t, h, u);
        ledger.trace.push_back({t, diag_rate, sum.real(), diag_rate - sum.real(), sum.real(),
                                std::abs(sum.imag())});
    }

    double q = 0.0;
    for (std::size_t k = 1; k < ledger.trace.size(); ++k) {
        const PowerSplit& a = ledger.trace[k - 1];
        const PowerSplit& b = ledger.trace[k];
        q += 0.5 * (a.q_dot + b.q_dot) * (b.at_time - a.at_time);
    }

    ledger.w_coherence =
        coherence_work(p.omega_j, omega_start, p.alpha, bath, p.duration, p.omega, u);
    ledger.w_sudden = sudden_work(p.omega_j, omega_start, p.alpha, bath, p.duration, p.omega, u);
    ledger.w_total = ledger.w_coherence + ledger.w_sudden;
    ledger.q = q;
    return ledger;
}

}  // namespace qotto
