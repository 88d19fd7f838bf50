#pragma once

#include <array>
#include <complex>
#include <vector>

namespace rmhd {

using Matrix8 = std::array<std::array<double, 8>, 8>;

Matrix8 mat8_zero();
Matrix8 mat8_identity();
Matrix8 mat8_mul(const Matrix8& a, const Matrix8& b);
std::array<double, 8> mat8_apply(const Matrix8& a, const std::array<double, 8>& x);
double mat8_det(Matrix8 a); // LU with partial pivoting

// Singular values (descending) of a dense row-major m x n matrix.
// One-sided Jacobi; intended for the small matrices used here (n <= 8).
std::vector<double> singular_values(const std::vector<double>& a, int m, int n);

// Numerical rank with threshold tol * sigma_max.
int numerical_rank(const std::vector<double>& a, int m, int n, double tol);

// Coefficients c[0..n] of det(x I - M) = x^n + c[1] x^(n-1) + ... + c[n]
// via the Faddeev-LeVerrier recursion (c[0] = 1).
std::array<double, 9> charpoly8(const Matrix8& m);

// All roots of the real polynomial x^n + c[1] x^(n-1) + ... + c[n]
// by the Aberth-Ehrlich iteration.
std::vector<std::complex<double>> poly_roots(const std::vector<double>& coeff);

// Eigenvalues of a real n x n matrix by Householder-Hessenberg reduction and
// shifted QR; independent of any closed-form knowledge about the spectrum.
std::vector<std::complex<double>> real_eigenvalues(std::vector<double> a, int n);
std::vector<std::complex<double>> eigenvalues8(const Matrix8& m);

} // namespace rmhd
