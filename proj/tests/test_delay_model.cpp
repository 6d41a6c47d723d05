#include <doctest.h>

#include <random>

#include "delayctl/delay_system.hpp"
#include "delayctl/errors.hpp"
#include "delayctl/reference_models.hpp"

using namespace delayctl;

TEST_SUITE("delay_model") {

TEST_CASE("reduced matrix with zero delays is the channel sum") {
    Matrix A(2, 2);
    A << 0, 1, -1, 0;
    Matrix B1(2, 1), B2(2, 1);
    B1 << 1, 0;
    B2 << 0, 2;
    const DelaySystem sys(A, {{B1, 0.0}, {B2, 0.0}});
    CHECK((reduced_input_matrix(sys) - (B1 + B2)).norm() == doctest::Approx(0.0));
}

TEST_CASE("reduced matrix of the bundled example") {
    const DelaySystem sys = reference::oscillator_pair();
    const Matrix B = reduced_input_matrix(sys);
    Eigen::Vector4d expected(-0.5, M_PI / 4 - 1.0, -1.0, 0.0);
    CHECK((B.col(0) - expected).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("scalar channels with zero state matrix just add up") {
    Matrix A = Matrix::Zero(1, 1);
    Matrix B1 = Matrix::Constant(1, 1, 2.0);
    Matrix B2 = Matrix::Constant(1, 1, 3.0);
    const DelaySystem sys(A, {{B1, 0.4}, {B2, 2.2}});
    CHECK(reduced_input_matrix(sys)(0, 0) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("total delay is the sum, not the maximum") {
    Matrix A = Matrix::Zero(1, 1);
    Matrix B = Matrix::Ones(1, 1);
    CHECK(total_delay(DelaySystem(A, {{B, 1.0}, {B, 2.0}, {B, 3.0}})) == doctest::Approx(6.0));
    CHECK(total_delay(reference::oscillator_pair()) == doctest::Approx(M_PI / 2));
    CHECK(total_delay(DelaySystem(A, {{B, 4.7}})) == doctest::Approx(4.7));
}

TEST_CASE("assumption report for the bundled example") {
    const AssumptionReport rep = check_assumptions(reference::oscillator_pair());
    CHECK(rep.controllable);
    CHECK(rep.stabilizable);
    CHECK(rep.spectrum_on_axis);
    CHECK(rep.total_tau == doctest::Approx(M_PI / 2));
}

TEST_CASE("off-axis spectrum is flagged") {
    Matrix A(2, 2);
    A << 1, 0, 0, -1;
    Matrix B(2, 1);
    B << 1, 1;
    const AssumptionReport rep = check_assumptions(DelaySystem(A, {{B, 0.0}}));
    CHECK_FALSE(rep.spectrum_on_axis);
    CHECK(rep.max_real_part == doctest::Approx(1.0));
    CHECK(rep.controllable);
    CHECK(rep.stabilizable);
}

TEST_CASE("unstable mode with no input is not stabilizable") {
    Matrix A(2, 2);
    A << 0.5, 0, 0, -1;
    const DelaySystem sys(A, {{Matrix::Zero(2, 1), 0.0}});
    const AssumptionReport rep = check_assumptions(sys);
    CHECK_FALSE(rep.stabilizable);
    CHECK_FALSE(rep.controllable);
}

TEST_CASE("reduced matrix is linear in the channel matrices") {
    const DelaySystem sys = reference::oscillator_pair();
    std::vector<InputChannel> doubled;
    for (const InputChannel& ch : sys.channels()) doubled.push_back({2.0 * ch.B, ch.tau});
    const DelaySystem sys2(sys.A(), doubled);
    CHECK((reduced_input_matrix(sys2) - 2.0 * reduced_input_matrix(sys)).norm() == doctest::Approx(0.0));
}

TEST_CASE("single undelayed channel reduces to an ordinary plant") {
    Matrix A(2, 2);
    A << 0, 1, -1, 0;
    Matrix B(2, 1);
    B << 0, 1;
    const DelaySystem sys(A, {{B, 0.0}});
    CHECK((reduced_input_matrix(sys) - B).norm() == doctest::Approx(0.0));
    CHECK(total_delay(sys) == 0.0);
}

TEST_CASE("controllability verdict survives a state similarity") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unit(-0.3, 0.3);
    const DelaySystem sys = reference::oscillator_pair();
    Matrix T = Matrix::Identity(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) T(i, j) += unit(rng);
    const Matrix Tinv = T.inverse();
    std::vector<InputChannel> channels;
    for (const InputChannel& ch : sys.channels()) channels.push_back({Tinv * ch.B, ch.tau});
    const DelaySystem transformed(Tinv * sys.A() * T, channels);
    CHECK(check_assumptions(transformed).controllable == check_assumptions(sys).controllable);
}

TEST_CASE("constructor validation") {
    Matrix A = Matrix::Zero(2, 2);
    Matrix B = Matrix::Ones(2, 1);
    CHECK_THROWS_AS(DelaySystem(A, {{B, 2.0}, {B, 1.0}}), ValidationError);  // unsorted
    CHECK_THROWS_AS(DelaySystem(A, {{B, -0.5}}), ValidationError);
    CHECK_THROWS_AS(DelaySystem(A, {{Matrix::Ones(3, 1), 0.0}}), DimensionError);
    CHECK_THROWS_AS(DelaySystem(A, {}), ValidationError);
}

}  // TEST_SUITE
