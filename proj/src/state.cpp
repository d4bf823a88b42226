#include "qotto/state.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qotto {

namespace {

constexpr double k_state_tol = 1e-12;

}  // namespace

BathSpec make_bath(double temperature, Units u) {
    if (!std::isfinite(temperature) || temperature <= 0.0) {
        throw std::invalid_argument("BathSpec: temperature must be finite and > 0");
    }
    return {temperature, 1.0 / (u.k_b * temperature)};
}

DensityMatrix DensityMatrix::from_matrix(const ComplexMat2& m) {
    if (!is_finite(m)) {
        throw std::invalid_argument("DensityMatrix: non-finite entries");
    }
    if (!is_hermitian(m, k_state_tol)) {
        throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-12");
    }
    if (std::abs(trace(m) - Complex{1.0, 0.0}) > k_state_tol) {
        throw std::invalid_argument("DensityMatrix: trace must be 1 within 1e-12");
    }
    if (hermitian_eigenvalues(m)[0] < -k_state_tol) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond -1e-12");
    }
    return DensityMatrix(m);
}

double DensityMatrix::purity() const {
    return trace(m_ * m_).real();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    const auto eig = hermitian_eigenvalues(a.matrix() - b.matrix());
    return 0.5 * (std::abs(eig[0]) + std::abs(eig[1]));
}

DensityMatrix thermal_state(double omega_j, const BathSpec& bath, Units u) {
    if (!std::isfinite(omega_j) || omega_j <= 0.0) {
        throw std::invalid_argument("thermal_state: omega_j must be finite and > 0");
    }
    const double x = 0.5 * bath.beta * u.hbar * omega_j;
    const double p_up = 1.0 / (1.0 + std::exp(2.0 * x));
    return DensityMatrix::from_matrix(
        {Complex{p_up, 0.0}, {0.0, 0.0}, {0.0, 0.0}, Complex{1.0 - p_up, 0.0}});
}

DensityMatrix evolve_stroke(const FieldProtocol& p, const DensityMatrix& rho0, double t) {
    const ComplexMat2 u_lab = propagator_lab(p, t);
    return DensityMatrix::from_matrix(u_lab * rho0.matrix() * adjoint(u_lab));
}

InstantaneousElements instantaneous_elements(const FieldProtocol& p, const DensityMatrix& rho,
                                             double t) {
    const EigenFrame frame = eigenframe(p, t);
    const ComplexMat2& m = rho.matrix();
    return {matrix_element(frame.chi_plus, m, frame.chi_plus).real(),
            matrix_element(frame.chi_minus, m, frame.chi_minus).real(),
            matrix_element(frame.chi_plus, m, frame.chi_minus), t};
}

double effective_temperature(double gap, double pop_ratio, Units u) {
    if (!std::isfinite(gap) || gap <= 0.0) {
        throw std::domain_error("effective_temperature: gap must be finite and > 0");
    }
    if (!std::isfinite(pop_ratio) || pop_ratio <= 0.0) {
        throw std::domain_error("effective_temperature: pop_ratio must be finite and > 0");
    }
    if (pop_ratio == 1.0) {
        return std::numeric_limits<double>::infinity();
    }
    return -gap / (u.k_b * std::log(pop_ratio));
}

}  // namespace qotto
