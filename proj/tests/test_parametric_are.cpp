#include <doctest.h>

#include <random>

#include "delayctl/errors.hpp"
#include "delayctl/parametric_gain.hpp"
#include "delayctl/random_systems.hpp"
#include "delayctl/reference_models.hpp"

using namespace delayctl;

TEST_SUITE("parametric_are") {

TEST_CASE("scalar design") {
    const Matrix A = Matrix::Zero(1, 1);
    const Matrix B = Matrix::Ones(1, 1);
    for (double g : {0.3, 1.0, 2.5}) {
        const Matrix W = solve_parametric_lyapunov(A, B, g);
        CHECK(W(0, 0) == doctest::Approx(1.0 / g).epsilon(1e-12));
        const ParametricGain pg = gain(A, B, g);
        CHECK(pg.P(0, 0) == doctest::Approx(g).epsilon(1e-12));
        CHECK(pg.F(0, 0) == doctest::Approx(-g).epsilon(1e-12));
    }
}

TEST_CASE("double integrator closed forms") {
    Matrix A(2, 2);
    A << 0, 1, 0, 0;
    Matrix B(2, 1);
    B << 0, 1;
    for (double g : {0.1, 0.5, 1.0}) {
        const Matrix W = solve_parametric_lyapunov(A, B, g);
        Matrix Wexp(2, 2);
        Wexp << 2.0 / (g * g * g), -1.0 / (g * g), -1.0 / (g * g), 1.0 / g;
        CHECK((W - Wexp).norm() <= 1e-9 * Wexp.norm());

        const ParametricGain pg = gain(A, B, g);
        Matrix Pexp(2, 2);
        Pexp << g * g * g, g * g, g * g, 2 * g;
        CHECK((pg.P - Pexp).norm() <= 1e-9 * Pexp.norm());
        Matrix Fexp(1, 2);
        Fexp << -g * g, -2 * g;
        CHECK((pg.F - Fexp).norm() <= 1e-9 * Fexp.norm());
    }
}

TEST_CASE("independent vectorized-solve oracle agrees") {
    // same equation assembled and solved through a different path
    const DelaySystem sys = reference::oscillator_pair();
    const Matrix B = reduced_input_matrix(sys);
    const double g = 0.37;
    const Matrix W = solve_parametric_lyapunov(sys.A(), B, g);

    const int n = 4;
    const Matrix M = sys.A() + 0.5 * g * Matrix::Identity(n, n);
    Matrix K = Matrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                K(i + j * n, i + k * n) += M(j, k);  // W M^T part, column-major vec
                K(i + j * n, k + j * n) += M(i, k);  // M W part
            }
    const Matrix Q = B * B.transpose();
    Eigen::VectorXd q = Eigen::Map<const Eigen::VectorXd>(Q.data(), n * n);
    Eigen::VectorXd w = K.colPivHouseholderQr().solve(q);
    const Matrix Woracle = Eigen::Map<Matrix>(w.data(), n, n);
    CHECK((W - Woracle).norm() <= 1e-9 * Woracle.norm());
}

TEST_CASE("gain for the bundled example matches the closed form") {
    const DelaySystem sys = reference::oscillator_pair();
    const Matrix B = reduced_input_matrix(sys);
    const ParametricGain pg = gain(sys.A(), B, 0.2);
    CHECK((pg.F - reference::oscillator_pair_tpf_gain(0.2)).cwiseAbs().maxCoeff() <= 1e-8);
    // four-decimal spot values
    CHECK(pg.F(0, 0) == doctest::Approx(0.0320).epsilon(1e-3));
    CHECK(pg.F(0, 1) == doctest::Approx(0.1584).epsilon(1e-3));
    CHECK(pg.F(0, 2) == doctest::Approx(0.7500).epsilon(1e-3));
    CHECK(pg.F(0, 3) == doctest::Approx(-0.1539).epsilon(1e-3));
}

TEST_CASE("design identities hold on the example across gamma") {
    const DelaySystem sys = reference::oscillator_pair();
    const Matrix B = reduced_input_matrix(sys);
    const int n = 4;
    for (double g : {0.05, 0.1, 0.3, 0.7, 1.0}) {
        const ParametricGain pg = gain(sys.A(), B, g);
        CHECK((pg.P * pg.W - Matrix::Identity(n, n)).norm() <= 1e-9 * pg.P.norm() * pg.W.norm());
        const double trace = (B.transpose() * pg.P * B).trace();
        CHECK(trace == doctest::Approx(n * g).epsilon(1e-8));
        CHECK(linalg::spectral_abscissa(sys.A() + B * pg.F) < 0.0);
    }
}

TEST_CASE("solution shrinks as gamma goes to zero") {
    const DelaySystem sys = reference::oscillator_pair();
    const Matrix B = reduced_input_matrix(sys);
    double prev = std::numeric_limits<double>::infinity();
    double first = 0;
    double last = 0;
    for (double g : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const Matrix P = gain(sys.A(), B, g).P;
        const double norm = P.norm();
        CHECK(norm < prev);
        prev = norm;
        if (first == 0) first = norm;
        last = norm;
    }
    CHECK(last < 1e-2 * first);
}

TEST_CASE("commutation identity") {
    const DelaySystem sys = reference::oscillator_pair();
    const Matrix B = reduced_input_matrix(sys);
    const ParametricGain pg = gain(sys.A(), B, 0.3);
    CHECK(commutation_residual(pg, sys.A(), 0.0) == doctest::Approx(0.0));
    CHECK(commutation_residual(pg, sys.A(), M_PI / 2) <= 1e-8);

    const Matrix As = Matrix::Zero(1, 1);
    const Matrix Bs = Matrix::Ones(1, 1);
    CHECK(commutation_residual(gain(As, Bs, 0.4), As, 1.0) <= 1e-12);
}

TEST_CASE("commutation identity on the random imaginary-axis family") {
    std::mt19937 rng(0x77u);
    std::uniform_real_distribution<double> gamma_draw(0.05, 1.0);
    std::uniform_real_distribution<double> time_draw(0.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 * (1 + trial % 3);
        const auto sysab = testing::random_imaginary_axis_system(rng, n, 1 + trial % 2);
        const ParametricGain pg = gain(sysab.A, sysab.B, gamma_draw(rng));
        CHECK(commutation_residual(pg, sysab.A, time_draw(rng)) <= 1e-8);
    }
}

TEST_CASE("parameter guards") {
    const Matrix A = Matrix::Zero(1, 1);
    const Matrix B = Matrix::Ones(1, 1);
    CHECK_THROWS_AS(solve_parametric_lyapunov(A, B, 0.0), ValidationError);
    CHECK_THROWS_AS(solve_parametric_lyapunov(A, B, -0.1), ValidationError);
    CHECK_THROWS_AS(solve_parametric_lyapunov(A, B, 1e-7), ValidationError);
}

TEST_CASE("uncontrollable pair is rejected") {
    Matrix A(2, 2);
    A << 0, 1, 0, 0;
    Matrix B(2, 1);
    B << 1, 0;  // misses the integrator input
    CHECK_THROWS_AS(gain(A, B, 0.5), NumericError);
}

}  // TEST_SUITE
