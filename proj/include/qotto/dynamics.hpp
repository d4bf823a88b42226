#pragma once

#include "qotto/algebra.hpp"
#include "qotto/units.hpp"

// Rotating-field drive model: lab-frame Hamiltonian H(omega_j, alpha, t), its
// instantaneous eigensystem, the rotating-frame Hamiltonian and the exact
// propagators for one adiabatic stroke.

namespace qotto {

// One stroke of the drive: field intensity omega_j (rad/s), incline angle
// alpha from the z axis, rotation rate omega about z (signed), stroke length.
struct FieldProtocol {
    double omega_j;   // > 0
    double alpha;     // [0, pi/2]
    double omega;     // signed
    double duration;  // >= 0
};

// Throws std::invalid_argument on out-of-range or non-finite fields.
void validate(const FieldProtocol& p);
FieldProtocol make_protocol(double omega_j, double alpha, double omega, double duration);

// Rabi frequency sqrt((omega_j cos a - omega)^2 + omega_j^2 sin^2 a).
double rabi_omega(const FieldProtocol& p);

// Instantaneous eigensystem of H at time t. Energies are +-hbar omega_j/2 at
// every t; only the eigenvectors move.
struct EigenFrame {
    Ket2 chi_plus;
    Ket2 chi_minus;
    double e_plus;
    double e_minus;
    double at_time;
};

ComplexMat2 hamiltonian(const FieldProtocol& p, double t, Units u = si_units());
ComplexMat2 dh_dt(const FieldProtocol& p, double t, Units u = si_units());
EigenFrame eigenframe(const FieldProtocol& p, double t, Units u = si_units());

// Time-independent effective Hamiltonian in the frame co-rotating with the
// field: (hbar/2)[omega_j sin a sigma_x + (omega_j cos a - omega) sigma_z].
ComplexMat2 rotating_hamiltonian(const FieldProtocol& p, Units u = si_units());

// exp(-i H_R t / hbar); unitary for all t including the degenerate Rabi
// frequency -> 0 limit.
ComplexMat2 propagator_rotating(const FieldProtocol& p, double t);

// Lab-frame propagator diag(e^{-i omega t/2}, e^{+i omega t/2}) * U_R.
ComplexMat2 propagator_lab(const FieldProtocol& p, double t);

}  // namespace qotto
