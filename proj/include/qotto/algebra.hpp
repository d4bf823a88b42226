#pragma once

#include <array>
#include <complex>

// Exact complex 2x2 algebra: Pauli matrices, products, adjoints, traces and
// the closed-form exponential exp(i a.sigma) of traceless Hermitian matrices.

namespace qotto {

using Complex = std::complex<double>;

struct ComplexMat2 {
    Complex a11, a12;
    Complex a21, a22;
};

struct Ket2 {
    Complex c_up, c_down;
};

inline constexpr ComplexMat2 identity2{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}};
inline constexpr ComplexMat2 sigma_x{{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
inline constexpr ComplexMat2 sigma_y{{0.0, 0.0}, {0.0, -1.0}, {0.0, 1.0}, {0.0, 0.0}};
inline constexpr ComplexMat2 sigma_z{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}};

ComplexMat2 operator+(const ComplexMat2& m, const ComplexMat2& n);
ComplexMat2 operator-(const ComplexMat2& m, const ComplexMat2& n);
ComplexMat2 operator-(const ComplexMat2& m);
ComplexMat2 operator*(const ComplexMat2& m, const ComplexMat2& n);
ComplexMat2 operator*(const Complex& c, const ComplexMat2& m);
ComplexMat2 operator*(double c, const ComplexMat2& m);

ComplexMat2 adjoint(const ComplexMat2& m);
Complex trace(const ComplexMat2& m);
Complex det(const ComplexMat2& m);
ComplexMat2 commutator(const ComplexMat2& m, const ComplexMat2& n);
double frobenius_norm(const ComplexMat2& m);

bool is_finite(const ComplexMat2& m);
bool is_hermitian(const ComplexMat2& m, double tol = 1e-12);
bool is_unitary(const ComplexMat2& m, double tol = 1e-12);

// Eigenvalues of a Hermitian matrix, ascending. Off-Hermitian parts of the
// input are projected out before evaluation.
std::array<double, 2> hermitian_eigenvalues(const ComplexMat2& m);

// x*sigma_x + y*sigma_y + z*sigma_z
ComplexMat2 pauli_compose(double x, double y, double z);

// exp(i a.sigma) = cos|a| I + i sin|a|/|a| (a.sigma), with the series limit
// sin|a|/|a| -> 1 - |a|^2/6 below |a| = 1e-8. Throws std::domain_error on
// non-finite input.
ComplexMat2 pauli_expi(const std::array<double, 3>& a);

Complex inner(const Ket2& bra, const Ket2& ket);
Ket2 apply(const ComplexMat2& m, const Ket2& ket);
double norm(const Ket2& k);

// <bra| m |ket>
Complex matrix_element(const Ket2& bra, const ComplexMat2& m, const Ket2& ket);

}  // namespace qotto
