#include "qotto/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace qotto {

ComplexMat2 operator+(const ComplexMat2& m, const ComplexMat2& n) {
    return {m.a11 + n.a11, m.a12 + n.a12, m.a21 + n.a21, m.a22 + n.a22};
}

ComplexMat2 operator-(const ComplexMat2& m, const ComplexMat2& n) {
    return {m.a11 - n.a11, m.a12 - n.a12, m.a21 - n.a21, m.a22 - n.a22};
}

ComplexMat2 operator-(const ComplexMat2& m) {
    return {-m.a11, -m.a12, -m.a21, -m.a22};
}

ComplexMat2 operator*(const ComplexMat2& m, const ComplexMat2& n) {
    return {m.a11 * n.a11 + m.a12 * n.a21, m.a11 * n.a12 + m.a12 * n.a22,
            m.a21 * n.a11 + m.a22 * n.a21, m.a21 * n.a12 + m.a22 * n.a22};
}

ComplexMat2 operator*(const Complex& c, const ComplexMat2& m) {
    return {c * m.a11, c * m.a12, c * m.a21, c * m.a22};
}

ComplexMat2 operator*(double c, const ComplexMat2& m) {
    return Complex{c, 0.0} * m;
}

ComplexMat2 adjoint(const ComplexMat2& m) {
    return {std::conj(m.a11), std::conj(m.a21), std::conj(m.a12), std::conj(m.a22)};
}

Complex trace(const ComplexMat2& m) {
    return m.a11 + m.a22;
}

Complex det(const ComplexMat2& m) {
    return m.a11 * m.a22 - m.a12 * m.a21;
}

ComplexMat2 commutator(const ComplexMat2& m, const ComplexMat2& n) {
    return m * n - n * m;
}

double frobenius_norm(const ComplexMat2& m) {
    return std::sqrt(std::norm(m.a11) + std::norm(m.a12) + std::norm(m.a21) + std::norm(m.a22));
}

bool is_finite(const ComplexMat2& m) {
    for (const Complex& c : {m.a11, m.a12, m.a21, m.a22}) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    }
    return true;
}

bool is_hermitian(const ComplexMat2& m, double tol) {
    return is_finite(m) && frobenius_norm(m - adjoint(m)) <= tol * std::max(1.0, frobenius_norm(m));
}

bool is_unitary(const ComplexMat2& m, double tol) {
    return is_finite(m) && frobenius_norm(m * adjoint(m) - identity2) <= tol;
}

std::array<double, 2> hermitian_eigenvalues(const ComplexMat2& m) {
    const ComplexMat2 h = 0.5 * (m + adjoint(m));
    const double a = h.a11.real();
    const double d = h.a22.real();
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(h.a12));
    return {mean - radius, mean + radius};
}

ComplexMat2 pauli_compose(double x, double y, double z) {
    return {Complex{z, 0.0}, Complex{x, -y}, Complex{x, y}, Complex{-z, 0.0}};
}

ComplexMat2 pauli_expi(const std::array<double, 3>& a) {
    for (double c : a) {
        if (!std::isfinite(c)) throw std::domain_error("pauli_expi: non-finite generator");
    }
    const double r = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    const double sinc = r < 1e-8 ? 1.0 - r * r / 6.0 : std::sin(r) / r;
    const Complex c{std::cos(r), 0.0};
    const Complex is{0.0, sinc};
    return c * identity2 + is * pauli_compose(a[0], a[1], a[2]);
}

Complex inner(const Ket2& bra, const Ket2& ket) {
    return std::conj(bra.c_up) * ket.c_up + std::conj(bra.c_down) * ket.c_down;
}

Ket2 apply(const ComplexMat2& m, const Ket2& ket) {
    return {m.a11 * ket.c_up + m.a12 * ket.c_down, m.a21 * ket.c_up + m.a22 * ket.c_down};
}

double norm(const Ket2& k) {
    return std::sqrt(std::norm(k.c_up) + std::norm(k.c_down));
}

Complex matrix_element(const Ket2& bra, const ComplexMat2& m, const Ket2& ket) {
    return inner(bra, apply(m, ket));
}

}  // namespace qotto
