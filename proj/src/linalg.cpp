#include "delayctl/linalg.hpp"

#include <cmath>
#include <random>

#include "delayctl/errors.hpp"

namespace delayctl::linalg {

void require_finite(const Matrix& M, const char* what) {
    if (M.size() == 0) throw ValidationError(std::string(what) + ": empty matrix");
    if (!M.allFinite()) throw ValidationError(std::string(what) + ": non-finite entries");
}

void require_square(const Matrix& M, const char* what) {
    if (M.rows() != M.cols())
        throw DimensionError(std::string(what) + ": matrix is " + std::to_string(M.rows()) + "x" +
                             std::to_string(M.cols()) + ", expected square");
}

Matrix expm(const Matrix& M, double t) {
    require_square(M, "expm");
    require_finite(M, "expm");
    if (!std::isfinite(t)) throw ValidationError("expm: non-finite time");

    const Eigen::Index n = M.rows();
    Matrix A = M * t;

    // infinity norm drives the scaling
    const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    if (squarings > 0) A /= std::pow(2.0, squarings);

    // Pade(13,13) numerator/denominator coefficients
    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};

    const Matrix I = Matrix::Identity(n, n);
    const Matrix A2 = A * A;
    const Matrix A4 = A2 * A2;
    const Matrix A6 = A4 * A2;

    const Matrix U = A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) +
                          b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
    const Matrix V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) +
                     b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;

    Matrix F = (V - U).partialPivLu().solve(V + U);
    for (int k = 0; k < squarings; ++k) F = F * F;
    return F;
}

namespace {

std::vector<Complex> extract_eigenvalues(const Eigen::EigenSolver<Matrix>& solver) {
    std::vector<Complex> out;
    out.reserve(static_cast<size_t>(solver.eigenvalues().size()));
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        out.push_back(solver.eigenvalues()(i));
    return out;
}

}  // namespace

std::vector<Complex> eigenvalues(const Matrix& M) {
    require_square(M, "eigenvalues");
    require_finite(M, "eigenvalues");
    if (M.rows() == 1) return {Complex(M(0, 0), 0.0)};

    Eigen::EigenSolver<Matrix> solver(M, /*computeEigenvectors=*/false);
    if (solver.info() == Eigen::Success) return extract_eigenvalues(solver);

    // Retry under random well-conditioned similarities; the spectrum is invariant.
    std::mt19937 rng(0x51c7u);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const Eigen::Index n = M.rows();
    for (int attempt = 0; attempt < 3; ++attempt) {
        Matrix T = Matrix::Identity(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) T(i, j) += 0.1 * unit(rng);
        const Matrix similar = T.partialPivLu().solve(M * T);
        solver.compute(similar, false);
        if (solver.info() == Eigen::Success) return extract_eigenvalues(solver);
    }
    throw NumericError("eigenvalues: QR iteration failed to converge after 3 retries");
}

double spectral_abscissa(const Matrix& M) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const Complex& ev : eigenvalues(M)) worst = std::max(worst, ev.real());
    return worst;
}

int controllability_rank(const Matrix& A, const Matrix& B) {
    require_square(A, "controllability_rank");
    require_finite(A, "controllability_rank");
    require_finite(B, "controllability_rank");
    if (A.rows() != B.rows())
        throw DimensionError("controllability_rank: A and B row counts differ");

    const Eigen::Index n = A.rows();
    const Eigen::Index m = B.cols();
    Matrix kalman(n, n * m);
    kalman.leftCols(m) = B;
    for (Eigen::Index k = 1; k < n; ++k)
        kalman.middleCols(k * m, m) = A * kalman.middleCols((k - 1) * m, m);

    Eigen::JacobiSVD<Matrix> svd(kalman);
    const auto& sigma = svd.singularValues();
    if (sigma.size() == 0) return 0;
    const double tol = static_cast<double>(std::max(n, m)) *
                       std::numeric_limits<double>::epsilon() * sigma(0) * 1e3;
    int rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) > tol) ++rank;
    return rank;
}

Matrix kron(const Matrix& A, const Matrix& B) {
    Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

}  // namespace delayctl::linalg
