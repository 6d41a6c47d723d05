#include <doctest.h>

#include <random>

#include "delayctl/controllers.hpp"
#include "delayctl/errors.hpp"
#include "delayctl/reference_models.hpp"

using namespace delayctl;

TEST_SUITE("controllers") {

TEST_CASE("zero total delay leaves the gain untouched") {
    Matrix A(2, 2);
    A << 0, 1, -1, 0;
    Matrix B(2, 1);
    B << 0, 1;
    const DelaySystem sys(A, {{B, 0.0}});
    const ParametricGain g = gain(A, reduced_input_matrix(sys), 0.4);
    const StaticGain K = tppf_gain(sys, g);
    CHECK((K.K - g.F).norm() == doctest::Approx(0.0));
    CHECK((tpf_gain(sys, g).K - g.F).norm() == 0.0);
}

TEST_CASE("predictor gain matches the closed form") {
    const DelaySystem sys = reference::oscillator_pair();
    const Matrix B = reduced_input_matrix(sys);
    for (double g : {0.2, 0.447}) {
        const StaticGain K = tppf_gain(sys, gain(sys.A(), B, g));
        CHECK((K.K - reference::oscillator_pair_tppf_gain(g)).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("single-channel system collapses to the one-delay law") {
    Matrix A(2, 2);
    A << 0, 1, -1, 0;
    Matrix B3(2, 1);
    B3 << 0.3, 1.0;
    const double tau3 = 1.7;
    const DelaySystem sys(A, {{B3, tau3}});
    const Matrix Bred = reduced_input_matrix(sys);
    const ParametricGain g = gain(A, Bred, 0.35);
    const StaticGain K = tppf_gain(sys, g);

    const Matrix F3 = g.F * linalg::expm(-A, tau3);
    const Matrix K3 = F3 * linalg::expm(A + B3 * F3, tau3);
    CHECK((K.K - K3).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("reduced predictor state with zero or empty inputs") {
    const DelaySystem sys = reference::oscillator_pair();
    Vector x(4);
    x << 1, 2, -1, 0.5;
    const History zero = History::constant(Vector::Zero(1), -3.0, 1.0);
    CHECK((predictor_state_z(sys, x, zero, 0.5, 0.01) - x).norm() <= 1e-12);

    Matrix A = Matrix::Zero(2, 2);
    Matrix B(2, 1);
    B << 1, 1;
    const DelaySystem nodelay(A, {{B, 0.0}});
    const History ones = History::constant(Vector::Ones(1), -1.0, 1.0);
    Vector x2(2);
    x2 << 3, -4;
    CHECK((predictor_state_z(nodelay, x2, ones, 0.0, 0.01) - x2).norm() == doctest::Approx(0.0));
}

TEST_CASE("scalar accumulation over one delay interval") {
    const Matrix A = Matrix::Zero(1, 1);
    const Matrix B = Matrix::Ones(1, 1);
    const DelaySystem sys(A, {{B, 1.0}});
    const History ones = History::constant(Vector::Ones(1), -2.0, 1.0);
    const Vector x = Vector::Constant(1, 5.0);
    const Vector z = predictor_state_z(sys, x, ones, 0.5, 0.01);
    CHECK(z(0) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("recursive and direct predictor states agree on smooth inputs") {
    const DelaySystem sys = reference::oscillator_pair();
    auto u = [](double t) { return Vector::Constant(1, 0.4 * std::sin(1.3 * t) + 0.2 * std::cos(2.1 * t)); };
    auto du = [](double t) {
        return Vector::Constant(1, 0.4 * 1.3 * std::cos(1.3 * t) - 0.2 * 2.1 * std::sin(2.1 * t));
    };
    const History hist = History::sample(u, du, -3.0, 5.0, 0.005);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> unit(-2.0, 2.0);
    for (double t : {0.0, 1.0, 2.7, 4.9}) {
        Vector x(4);
        for (int i = 0; i < 4; ++i) x(i) = unit(rng);
        const Vector z = predictor_state_z(sys, x, hist, t, 0.005);
        const Vector y = predictor_state_y_recursive(sys, x, hist, t, 0.005);
        CHECK((y - z).norm() <= 1e-8 * (1.0 + z.norm()));
    }
}

TEST_CASE("recursive chain with one channel is a plain transform") {
    Matrix A(2, 2);
    A << 0, 0.5, -0.5, 0;
    Matrix B(2, 1);
    B << 1, 0;
    const DelaySystem sys(A, {{B, 1.2}});
    auto u = [](double t) { return Vector::Constant(1, std::sin(t)); };
    auto du = [](double t) { return Vector::Constant(1, std::cos(t)); };
    const History hist = History::sample(u, du, -2.0, 2.0, 0.01);
    Vector x(2);
    x << 1, -1;
    const Vector y = predictor_state_y_recursive(sys, x, hist, 0.8, 0.01);
    const Vector z = predictor_state_z(sys, x, hist, 0.8, 0.01);
    CHECK((y - z).norm() <= 1e-10 * (1 + z.norm()));
}

TEST_CASE("correction-free history reduces the distributed laws to static gains") {
    const DelaySystem sys = reference::oscillator_pair();
    const ParametricGain g = gain(sys.A(), reduced_input_matrix(sys), 0.3);
    const History zero = History::constant(Vector::Zero(1), -3.0, 0.5);
    Vector x(4);
    x << 0.3, -1.2, 0.8, 0.1;

    const HistoryController ppf(HistoryController::Kind::PPF, sys, g, 0.01);
    const Vector u_ppf = ppf_control(ppf, x, zero, 0.0);
    CHECK((u_ppf - tppf_gain(sys, g).K * x).norm() <= 1e-12 * (1 + x.norm()));

    const HistoryController mr(HistoryController::Kind::ModelReduction, sys, g, 0.01);
    const Vector u_mr = model_reduction_control(mr, x, zero, 0.0);
    CHECK((u_mr - g.F * x).norm() <= 1e-12 * (1 + x.norm()));
}

TEST_CASE("scalar correction term against the hand integral and a finer grid") {
    // two scalar channels, constant unit input
    const Matrix A = Matrix::Zero(1, 1);
    const Matrix B = Matrix::Ones(1, 1);
    const DelaySystem sys(A, {{B, 0.0}, {B, 1.0}});
    const Matrix Bred = reduced_input_matrix(sys);  // = 2
    const ParametricGain g = gain(A, Bred, 0.6);
    const History ones = History::constant(Vector::Ones(1), -2.0, 0.2);
    Vector x = Vector::Constant(1, 1.5);

    const HistoryController coarse(HistoryController::Kind::PPF, sys, g, 0.05);
    const HistoryController fine(HistoryController::Kind::PPF, sys, g, 0.005);
    const Vector u_coarse = ppf_control(coarse, x, ones, 0.0);
    const Vector u_fine = ppf_control(fine, x, ones, 0.0);
    CHECK((u_coarse - u_fine).norm() <= 1e-12);

    // A = 0 makes the correction integral elementary: phi = B1 * tau = 1
    const double tau = 1.0;
    const Matrix G = g.F * linalg::expm(A + Bred * g.F, tau);  // e^{-A tau} = 1
    const double expected = (G * (x - Vector::Ones(1)))(0);
    CHECK(u_fine(0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("insufficient history span is a hard error") {
    const DelaySystem sys = reference::oscillator_pair();
    const ParametricGain g = gain(sys.A(), reduced_input_matrix(sys), 0.3);
    const HistoryController ppf(HistoryController::Kind::PPF, sys, g, 0.01);
    const History tiny = History::constant(Vector::Zero(1), -0.5, 0.0);  // spans only 0.5
    Vector x = Vector::Zero(4);
    CHECK_THROWS_AS(ppf_control(ppf, x, tiny, 0.0), HistoryError);

    const History early = History::constant(Vector::Zero(1), -3.0, 0.5);
    CHECK_THROWS_AS(ppf_control(ppf, x, early, 1.0), HistoryError);  // ends before t
}

}  // TEST_SUITE
