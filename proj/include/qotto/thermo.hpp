#pragma once

#include <vector>

#include "qotto/state.hpp"

// First-law decomposition along a stroke: heat/work rates split into the
// diagonal (population) part and the coherence part, the closed-form
// coherence work W_L, the sudden-switch work W_S and per-stroke ledgers.

namespace qotto {

// Instantaneous rates at one sampled time. For this drive the eigenvalues
// are constant, so the work rate is the coherence term alone and the heat
// rate q_dot = q_dot_diag - coherence_term should vanish.
struct PowerSplit {
    double at_time;
    double q_dot_diag;     // sum_n d/dt(rho_nn) E_n, finite differences
    double coherence_term; // Re sum_{n!=m} rho_nm <m|dH/dt|n>
    double q_dot;          // q_dot_diag - coherence_term
    double w_dot;          // coherence_term (eigenvalues are static)
    double imag_residual;  // |Im| of the coherence sum, numerical diagnostic
};

struct StrokeLedger {
    double w_coherence;  // W_L
    double w_sudden;     // W_S
    double w_total;      // W_L + W_S
    double q;            // integrated q_dot, ~0 for these strokes
    std::vector<PowerSplit> trace;
};

// Full complex coherence sum sum_{n!=m} rho_nm <m|dH/dt|n> in the
// instantaneous eigenbasis; Hermiticity forces it real up to rounding.
Complex coherence_sum(const FieldProtocol& p, const DensityMatrix& rho, double t,
                      Units u = si_units());

// Real part of coherence_sum: the coherence contribution to the work rate.
double coherence_power(const FieldProtocol& p, const DensityMatrix& rho, double t,
                       Units u = si_units());

// sum_n d/dt(rho_nn) E_n - coherence_power along the trajectory evolved from
// rho_start; vanishes analytically (the stroke exchanges no heat).
double adiabaticity_residual(const FieldProtocol& p, const DensityMatrix& rho_start, double t,
                             Units u = si_units());

// Closed-form Larmor-precession work on a stroke that starts from the
// thermal state of the previous static field (intensity omega_start):
// hbar omega omega_end^2 sin^2(Omega t/2) sin^2 a tanh(beta hbar omega_start/2) / Omega^2.
double coherence_work(double omega_end, double omega_start, double alpha, const BathSpec& bath,
                      double t, double omega, Units u = si_units());

// Work of the two instantaneous field switches bracketing the stroke:
// Tr[(H(omega_end,a,0) - H(omega_start,0,0)) rho_th]
//   + Tr[(H(omega_end,0,t) - H(omega_end,a,t)) rho(t)].
double sudden_work(double omega_end, double omega_start, double alpha, const BathSpec& bath,
                   double t, double omega, Units u = si_units());

// Assembles W_L, W_S, W and a uniformly sampled PowerSplit trace for the
// stroke described by p, starting thermal at omega_start.
StrokeLedger stroke_ledger(const FieldProtocol& p, const BathSpec& bath, double omega_start,
                           int samples = 401, Units u = si_units());

}  // namespace qotto
