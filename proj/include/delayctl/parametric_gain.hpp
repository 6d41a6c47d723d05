#pragma once

#include "delayctl/linalg.hpp"

namespace delayctl {

using linalg::Matrix;

// gamma-parameterized low-gain design: W solves the parametric Lyapunov
// equation, P = W^{-1}, F = -B^T P, and A + BF is Hurwitz.
struct ParametricGain {
    double gamma = 0.0;
    Matrix W;  // n x n symmetric positive definite
    Matrix P;  // n x n symmetric positive definite, P = W^{-1}
    Matrix F;  // m x n
    Matrix B;  // n x m reduced input matrix used for the design
};

// Solves W (A + gamma/2 I)^T + (A + gamma/2 I) W = B B^T by Kronecker
// vectorization and symmetrizes the result.  Requires gamma >= 1e-6 (below
// that W grows like gamma^{-(2n-1)} and the inverse is meaningless in double
// precision).  Throws NumericError naming the smallest singular value when
// the vectorized system is singular.
Matrix solve_parametric_lyapunov(const Matrix& A, const Matrix& B, double gamma);

// Bundles W, P (solved columnwise from W P = I, then symmetrized) and
// F = -B^T P; verifies the equation residual, positive definiteness and the
// Hurwitz property of A + BF.
ParametricGain gain(const Matrix& A, const Matrix& B, double gamma);

// || P e^{(A+BF)t} - e^{-(A+gamma I)^T t} P || / ||P||
double commutation_residual(const ParametricGain& g, const Matrix& A, double t);

}  // namespace delayctl
