#include "delayctl/random_systems.hpp"

#include "delayctl/errors.hpp"

namespace delayctl::testing {

ImaginaryAxisSystem random_imaginary_axis_system(std::mt19937& rng, int n, int m) {
    if (n < 1 || m < 1) throw ValidationError("random_imaginary_axis_system: bad dimensions");
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> freq(0.2, 2.0);

    Matrix D = Matrix::Zero(n, n);
    // every zero eigenvalue needs its own input direction: keep the number of
    // zero Jordan chains at or below m or no B can be controllable
    int zero_chains = (n % 2) ? 1 : 0;  // odd n leaves a trailing scalar zero
    int i = 0;
    while (i + 1 < n) {
        if (unit(rng) > -0.6 || zero_chains >= m) {
            const double w = freq(rng);
            D(i, i + 1) = w;
            D(i + 1, i) = -w;
        } else {
            D(i, i + 1) = 1.0;  // nilpotent zero block
            ++zero_chains;
        }
        i += 2;
    }

    // random orthogonal similarity: perfectly conditioned, so the identity
    // checks downstream are not polluted by the conjugation itself
    Matrix G(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) G(r, c) = unit(rng);
    const Matrix T = Eigen::HouseholderQR<Matrix>(G).householderQ();
    const Matrix A = T.transpose() * D * T;

    Matrix B(n, m);
    for (int attempt = 0; attempt < 64; ++attempt) {
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < m; ++c) B(r, c) = unit(rng);
        if (linalg::controllability_rank(A, B) == n) return {A, B};
    }
    throw NumericError("random_imaginary_axis_system: failed to draw a controllable pair");
}

}  // namespace delayctl::testing
