#include <doctest.h>

#include <random>

#include "delayctl/errors.hpp"
#include "delayctl/linalg.hpp"
#include "delayctl/reference_models.hpp"

using namespace delayctl;
using linalg::Complex;
using linalg::Matrix;

namespace {

Matrix random_matrix(std::mt19937& rng, int n, double norm_cap) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Matrix M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = unit(rng);
    const double norm = M.norm();
    if (norm > norm_cap) M *= norm_cap / norm;
    return M;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("exponential of the zero matrix is the identity") {
    const Matrix E = linalg::expm(Matrix::Zero(5, 5), 3.7);
    CHECK((E - Matrix::Identity(5, 5)).norm() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("planar rotation by a quarter turn") {
    Matrix R(2, 2);
    R << 0, 1, -1, 0;
    Matrix expected(2, 2);
    expected << 0, 1, -1, 0;
    CHECK((linalg::expm(R, M_PI / 2) - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("exponential stays accurate up to scaled norm 50") {
    Matrix R(2, 2);
    R << 0, 1, -1, 0;
    const double t = 50.0 / R.cwiseAbs().rowwise().sum().maxCoeff();
    Matrix expected(2, 2);
    expected << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
    CHECK((linalg::expm(R, t) - expected).norm() <= 1e-12 * expected.norm());

    // non-normal case: nilpotent coupling has the closed form [[1, t], [0, 1]]
    Matrix J(2, 2);
    J << 0, 1, 0, 0;
    Matrix Jexp(2, 2);
    Jexp << 1, 50, 0, 1;
    CHECK((linalg::expm(J, 50.0) - Jexp).norm() <= 1e-12 * Jexp.norm());
}

TEST_CASE("reduced input matrix of the bundled example") {
    const DelaySystem sys = reference::oscillator_pair();
    const Matrix& A = sys.A();
    const Matrix& B1 = sys.channels()[0].B;
    const Matrix& B2 = sys.channels()[1].B;
    const Matrix B = linalg::expm(-A, M_PI / 2) * B2 + B1;
    Eigen::Vector4d expected(-0.5, M_PI / 4 - 1.0, -1.0, 0.0);
    CHECK((B.col(0) - expected).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("semigroup and inverse properties of the exponential") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> time(-5.0, 5.0);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + trial % 5;
        const Matrix M = random_matrix(rng, n, 5.0);
        const double s = time(rng), t = time(rng);
        const Matrix lhs = linalg::expm(M, s) * linalg::expm(M, t);
        const Matrix rhs = linalg::expm(M, s + t);
        CHECK((lhs - rhs).norm() <= 1e-9 * rhs.norm());
        const Matrix prod = linalg::expm(M, t) * linalg::expm(M, -t);
        CHECK((prod - Matrix::Identity(n, n)).norm() <= 1e-9 * prod.norm());
    }
}

TEST_CASE("defective spectrum of the example state matrix") {
    const DelaySystem sys = reference::oscillator_pair();
    auto evs = linalg::eigenvalues(sys.A());
    REQUIRE(evs.size() == 4);
    std::sort(evs.begin(), evs.end(),
              [](const Complex& a, const Complex& b) { return a.imag() < b.imag(); });
    CHECK(std::abs(evs[0] - Complex(0, -1)) < 1e-6);
    CHECK(std::abs(evs[1] - Complex(0, -1)) < 1e-6);
    CHECK(std::abs(evs[2] - Complex(0, 1)) < 1e-6);
    CHECK(std::abs(evs[3] - Complex(0, 1)) < 1e-6);
}

TEST_CASE("identity spectrum") {
    for (const Complex& ev : linalg::eigenvalues(Matrix::Identity(6, 6)))
        CHECK(std::abs(ev - Complex(1, 0)) < 1e-12);
}

TEST_CASE("eigenvalue sums and products match trace and determinant") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 2 + trial % 7;
        const Matrix M = random_matrix(rng, n, 3.0);
        Complex sum = 0, prod = 1;
        for (const Complex& ev : linalg::eigenvalues(M)) {
            sum += ev;
            prod *= ev;
        }
        CHECK(std::abs(sum - Complex(M.trace(), 0)) <= 1e-9 * (1 + std::abs(M.trace())));
        const double det = M.determinant();
        CHECK(std::abs(prod - Complex(det, 0)) <= 1e-8 * (1 + std::abs(det)));
    }
}

TEST_CASE("controllability rank") {
    const DelaySystem sys = reference::oscillator_pair();
    const Matrix B = reduced_input_matrix(sys);
    CHECK(linalg::controllability_rank(sys.A(), B) == 4);
    CHECK(linalg::controllability_rank(sys.A(), Matrix::Zero(4, 1)) == 0);

    Matrix D(2, 2);
    D << 1, 0, 0, 2;
    Matrix b(2, 1);
    b << 1, 1;
    CHECK(linalg::controllability_rank(D, b) == 2);
}

TEST_CASE("controllability rank is similarity invariant") {
    std::mt19937 rng(7);
    const DelaySystem sys = reference::oscillator_pair();
    const Matrix B = reduced_input_matrix(sys);
    for (int trial = 0; trial < 5; ++trial) {
        Matrix T = Matrix::Identity(4, 4) + 0.3 * random_matrix(rng, 4, 1.0);
        const Matrix At = T.inverse() * sys.A() * T;
        const Matrix Bt = T.inverse() * B;
        CHECK(linalg::controllability_rank(At, Bt) == 4);
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(linalg::expm(Matrix::Zero(2, 3), 1.0), DimensionError);
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(linalg::expm(bad, 1.0), ValidationError);
    CHECK_THROWS_AS(linalg::eigenvalues(Matrix::Zero(2, 3)), DimensionError);
}

}  // TEST_SUITE
