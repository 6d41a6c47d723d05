#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace delayctl::linalg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Throws DimensionError / ValidationError when the matrix is empty or has
// non-finite entries.
void require_finite(const Matrix& M, const char* what);
void require_square(const Matrix& M, const char* what);

// e^{Mt} by scaling-and-squaring with a diagonal Pade(13,13) core.  The
// squaring count is chosen so the scaled norm is at most 0.5.
Matrix expm(const Matrix& M, double t = 1.0);

// All n eigenvalues with multiplicity, unordered.  Dense nonsymmetric solve
// (Schur based); retries under a random similarity on non-convergence and
// throws NumericError after three retries.
std::vector<Complex> eigenvalues(const Matrix& M);

// max Re lambda(M)
double spectral_abscissa(const Matrix& M);

// Rank of [B, AB, ..., A^{n-1}B].  Singular values below
// max(n,m) * eps * sigma_max * 1e3 count as zero.
int controllability_rank(const Matrix& A, const Matrix& B);

Matrix kron(const Matrix& A, const Matrix& B);

}  // namespace delayctl::linalg
