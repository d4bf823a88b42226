#pragma once

#include "qotto/algebra.hpp"
#include "qotto/dynamics.hpp"
#include "qotto/units.hpp"

// Density matrices: Gibbs construction, unitary stroke evolution,
// instantaneous-basis matrix elements and effective-temperature extraction.

namespace qotto {

struct BathSpec {
    double temperature;  // K, > 0
    double beta;         // 1/(k_B T), 1/J
};

// Throws std::invalid_argument unless temperature > 0 and finite.
BathSpec make_bath(double temperature, Units u = si_units());

// Hermitian, trace-1, positive-semidefinite 2x2 state. Construction validates
// (Hermitian and unit trace within 1e-12, eigenvalues >= -1e-12) and rejects
// violations rather than repairing them.
class DensityMatrix {
  public:
    static DensityMatrix from_matrix(const ComplexMat2& m);

    const ComplexMat2& matrix() const { return m_; }
    double population_up() const { return m_.a11.real(); }
    double population_down() const { return m_.a22.real(); }
    std::array<double, 2> spectrum() const { return hermitian_eigenvalues(m_); }
    double purity() const;

  private:
    explicit DensityMatrix(const ComplexMat2& m) : m_(m) {}
    ComplexMat2 m_;
};

// (1/2) Tr |a - b|
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Gibbs state of the static field at intensity omega_j:
// diag(e^{-x}, e^{+x})/Z with x = beta hbar omega_j / 2.
DensityMatrix thermal_state(double omega_j, const BathSpec& bath, Units u = si_units());

// rho(t) = U(t) rho0 U(t)^dagger with the exact lab-frame propagator.
DensityMatrix evolve_stroke(const FieldProtocol& p, const DensityMatrix& rho0, double t);

// Matrix elements of a state in the instantaneous eigenbasis chi+-(alpha, t).
struct InstantaneousElements {
    double rho_pp;
    double rho_mm;
    Complex rho_pm;
    double at_time;
};

InstantaneousElements instantaneous_elements(const FieldProtocol& p, const DensityMatrix& rho,
                                             double t);

// Temperature from a two-level Boltzmann ratio pop_ratio = p_upper/p_lower
// = e^{-gap/(k_B T)}. Inverted populations give a negative temperature;
// pop_ratio = 1 gives +infinity. Throws std::domain_error for pop_ratio <= 0
// or gap <= 0.
double effective_temperature(double gap, double pop_ratio, Units u = si_units());

}  // namespace qotto
