#include "delayctl/parametric_gain.hpp"

#include <cmath>
#include <sstream>

#include "delayctl/errors.hpp"

namespace delayctl {

Matrix solve_parametric_lyapunov(const Matrix& A, const Matrix& B, double gamma) {
    linalg::require_square(A, "solve_parametric_lyapunov");
    linalg::require_finite(A, "solve_parametric_lyapunov");
    linalg::require_finite(B, "solve_parametric_lyapunov");
    if (A.rows() != B.rows())
        throw DimensionError("solve_parametric_lyapunov: A and B row counts differ");
    if (!(gamma > 0.0)) throw ValidationError("solve_parametric_lyapunov: gamma must be positive");
    if (gamma < 1e-6)
        throw ValidationError("solve_parametric_lyapunov: gamma below 1e-6 is outside the "
                              "numerically meaningful range");

    const Eigen::Index n = A.rows();
    const Matrix M = A + 0.5 * gamma * Matrix::Identity(n, n);
    const Matrix I = Matrix::Identity(n, n);
    const Matrix K = linalg::kron(I, M) + linalg::kron(M, I);
    const Matrix Q = B * B.transpose();

    // column-major vec
    Eigen::VectorXd q = Eigen::Map<const Eigen::VectorXd>(Q.data(), n * n);
    Eigen::PartialPivLU<Matrix> lu(K);
    Eigen::VectorXd w = lu.solve(q);

    Matrix W = Eigen::Map<Matrix>(w.data(), n, n);
    W = 0.5 * (W + W.transpose()).eval();

    // the backward-stable term covers the growth of ||W|| ~ gamma^{-(2k-1)}
    // at small gamma, where the plain 1e-10 bound is unreachable in doubles
    const double residual = (W * M.transpose() + M * W - Q).norm();
    const double tolerance = 1e-10 * (Q.norm() + 1.0) +
                             128.0 * std::numeric_limits<double>::epsilon() * M.norm() * W.norm();
    if (!W.allFinite() || residual > tolerance) {
        Eigen::JacobiSVD<Matrix> svd(K);
        std::ostringstream msg;
        msg << "solve_parametric_lyapunov: vectorized system is singular or ill-conditioned "
               "(smallest singular value "
            << svd.singularValues()(svd.singularValues().size() - 1)
            << "); check controllability of (A,B) and the size of gamma";
        throw NumericError(msg.str());
    }

    Eigen::SelfAdjointEigenSolver<Matrix> es(W);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw NumericError("solve_parametric_lyapunov: W is not positive definite; "
                           "(A,B) likely violates the controllability/imaginary-axis assumption");
    return W;
}

ParametricGain gain(const Matrix& A, const Matrix& B, double gamma) {
    ParametricGain g;
    g.gamma = gamma;
    g.B = B;
    g.W = solve_parametric_lyapunov(A, B, gamma);

    const Eigen::Index n = A.rows();
    // columnwise solve of W P = I instead of an explicit inverse; W is SPD
    Eigen::LLT<Matrix> llt(g.W);
    if (llt.info() != Eigen::Success)
        throw NumericError("gain: Cholesky factorization of W failed");
    Matrix P = llt.solve(Matrix::Identity(n, n));
    g.P = 0.5 * (P + P.transpose()).eval();
    g.F = -B.transpose() * g.P;

    const double are_residual =
        (A.transpose() * g.P + g.P * A - g.P * B * B.transpose() * g.P + gamma * g.P).norm();
    if (are_residual > 1e-8 * g.P.norm())
        throw NumericError("gain: Riccati residual exceeds tolerance");

    if (linalg::spectral_abscissa(A + B * g.F) >= 0.0)
        throw NumericError("gain: A + BF is not Hurwitz; the design assumptions do not hold");
    return g;
}

double commutation_residual(const ParametricGain& g, const Matrix& A, double t) {
    if (t < 0.0) throw ValidationError("commutation_residual: t must be non-negative");
    const Eigen::Index n = A.rows();
    const Matrix lhs = g.P * linalg::expm(A + g.B * g.F, t);
    const Matrix rhs =
        linalg::expm(-(A + g.gamma * Matrix::Identity(n, n)).transpose(), t) * g.P;
    return (lhs - rhs).norm() / g.P.norm();
}

}  // namespace delayctl
