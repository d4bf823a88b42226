#include "qotto/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qotto {

void validate(const FieldProtocol& p) {
    if (!std::isfinite(p.omega_j) || p.omega_j <= 0.0) {
        throw std::invalid_argument("FieldProtocol: omega_j must be finite and > 0");
    }
    if (!std::isfinite(p.alpha) || p.alpha < 0.0 || p.alpha > std::numbers::pi / 2.0) {
        throw std::invalid_argument("FieldProtocol: alpha must lie in [0, pi/2]");
    }
    if (!std::isfinite(p.omega)) {
        throw std::invalid_argument("FieldProtocol: omega must be finite");
    }
    if (!std::isfinite(p.duration) || p.duration < 0.0) {
        throw std::invalid_argument("FieldProtocol: duration must be finite and >= 0");
    }
}

FieldProtocol make_protocol(double omega_j, double alpha, double omega, double duration) {
    FieldProtocol p{omega_j, alpha, omega, duration};
    validate(p);
    return p;
}

double rabi_omega(const FieldProtocol& p) {
    return std::hypot(p.omega_j * std::cos(p.alpha) - p.omega, p.omega_j * std::sin(p.alpha));
}

ComplexMat2 hamiltonian(const FieldProtocol& p, double t, Units u) {
    const double sa = std::sin(p.alpha);
    const double phase = p.omega * t;
    return (0.5 * u.hbar * p.omega_j) *
           pauli_compose(sa * std::cos(phase), sa * std::sin(phase), std::cos(p.alpha));
}

ComplexMat2 dh_dt(const FieldProtocol& p, double t, Units u) {
    const double sa = std::sin(p.alpha);
    const double phase = p.omega * t;
    return (0.5 * u.hbar * p.omega_j * p.omega) *
           pauli_compose(-sa * std::sin(phase), sa * std::cos(phase), 0.0);
}

EigenFrame eigenframe(const FieldProtocol& p, double t, Units u) {
    const double c = std::cos(0.5 * p.alpha);
    const double s = std::sin(0.5 * p.alpha);
    const Complex phase = std::polar(1.0, p.omega * t);
    const double e = 0.5 * u.hbar * p.omega_j;
    return {{Complex{c, 0.0}, phase * s}, {std::conj(phase) * s, Complex{-c, 0.0}}, e, -e, t};
}

ComplexMat2 rotating_hamiltonian(const FieldProtocol& p, Units u) {
    return (0.5 * u.hbar) * pauli_compose(p.omega_j * std::sin(p.alpha), 0.0,
                                          p.omega_j * std::cos(p.alpha) - p.omega);
}

ComplexMat2 propagator_rotating(const FieldProtocol& p, double t) {
    const double half_t = -0.5 * t;
    return pauli_expi({half_t * p.omega_j * std::sin(p.alpha), 0.0,
                       half_t * (p.omega_j * std::cos(p.alpha) - p.omega)});
}

ComplexMat2 propagator_lab(const FieldProtocol& p, double t) {
    const Complex phase = std::polar(1.0, -0.5 * p.omega * t);
    const ComplexMat2 frame{phase, {0.0, 0.0}, {0.0, 0.0}, std::conj(phase)};
    return frame * propagator_rotating(p, t);
}

}  // namespace qotto
