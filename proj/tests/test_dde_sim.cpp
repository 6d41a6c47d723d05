#include <doctest.h>

#include "delayctl/dde_sim.hpp"
#include "delayctl/errors.hpp"
#include "delayctl/reference_models.hpp"

using namespace delayctl;

TEST_SUITE("dde_sim") {

TEST_CASE("closed-loop assembly of the bundled example") {
    const DelaySystem sys = reference::oscillator_pair();
    const ParametricGain g = gain(sys.A(), reduced_input_matrix(sys), 0.3);
    const Matrix K = tppf_gain(sys, g).K;
    const LinearDDE dde = assemble_closed_loop(sys, K);
    CHECK((dde.A0 - (sys.A() + sys.channels()[0].B * K)).norm() == doctest::Approx(0.0));
    REQUIRE(dde.delayed.size() == 1);
    CHECK(dde.delayed[0].tau == doctest::Approx(M_PI / 2));
    CHECK((dde.delayed[0].A - sys.channels()[1].B * K).norm() == doctest::Approx(0.0));
}

TEST_CASE("zero gain prunes every delayed block") {
    const DelaySystem sys = reference::oscillator_pair();
    const LinearDDE dde = assemble_closed_loop(sys, Matrix::Zero(1, 4));
    CHECK(dde.delayed.empty());
    CHECK((dde.A0 - sys.A()).norm() == doctest::Approx(0.0));
}

TEST_CASE("splitting a channel leaves the assembly unchanged") {
    Matrix A(2, 2);
    A << 0, 1, -1, 0;
    Matrix B(2, 1);
    B << 1, 2;
    Matrix K(1, 2);
    K << 0.3, -0.7;
    const DelaySystem whole(A, {{B, 0.9}});
    const DelaySystem split(A, {{0.5 * B, 0.9}, {0.5 * B, 0.9}});
    const LinearDDE d1 = assemble_closed_loop(whole, K);
    const LinearDDE d2 = assemble_closed_loop(split, K);
    REQUIRE(d1.delayed.size() == d2.delayed.size());
    CHECK((d1.delayed[0].A - d2.delayed[0].A).norm() == doctest::Approx(0.0));
}

TEST_CASE("delay-free simulation tracks the exponential") {
    Matrix A0(3, 3);
    A0 << -0.2, 1, 0, -1, -0.2, 0.4, 0, -0.4, -0.1;
    Vector x0(3);
    x0 << 1, -2, 0.5;
    const History init = History::constant(x0, -1.0, 0.0);
    const Trajectory traj = simulate(LinearDDE{A0, {}}, init, 5.0, 0.01);
    const Vector exact = linalg::expm(A0, 5.0) * x0;
    CHECK((traj.final_state() - exact).norm() <= 1e-6 * exact.norm());
}

TEST_CASE("history interpolation and definite integration") {
    auto f = [](double t) { return Vector::Constant(1, t * t * t - 2 * t); };
    auto df = [](double t) { return Vector::Constant(1, 3 * t * t - 2); };
    const History h = History::sample(f, df, -1.0, 2.0, 0.1);
    // cubic data is reproduced exactly by cubic Hermite pieces
    CHECK(h.eval(0.73)(0) == doctest::Approx(f(0.73)(0)).epsilon(1e-13));
    CHECK(h.derivative(-0.4)(0) == doctest::Approx(df(-0.4)(0)).epsilon(1e-12));
    // antiderivative t^4/4 - t^2 over [-0.5, 1.7]
    const double exact = (std::pow(1.7, 4) / 4 - 1.7 * 1.7) - (std::pow(0.5, 4) / 4 - 0.25);
    CHECK(h.integrate(-0.5, 1.7)(0) == doctest::Approx(exact).epsilon(1e-12));
    CHECK(h.integrate(1.7, -0.5)(0) == doctest::Approx(-exact).epsilon(1e-12));
}

TEST_CASE("method of steps on the scalar delayed decay") {
    Matrix A0 = Matrix::Zero(1, 1), Ad(1, 1);
    Ad << -1.0;
    const LinearDDE dde = make_linear_dde(A0, {{Ad, 1.0}});
    const History init = History::constant(Vector::Ones(1), -1.0, 0.0);
    const Trajectory traj = simulate(dde, init, 1.0, 0.02);
    // x(t) = 1 - t on [0, 1]
    CHECK(std::abs(traj.final_state()(0)) <= 1e-8);
    const History h = traj.state_history();
    CHECK(h.eval(0.5)(0) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("step and span validation") {
    Matrix A0 = Matrix::Zero(1, 1), Ad(1, 1);
    Ad << -1.0;
    const LinearDDE dde = make_linear_dde(A0, {{Ad, 0.2}});
    const History good = History::constant(Vector::Ones(1), -0.3, 0.0);
    CHECK_THROWS_AS(simulate(dde, good, 1.0, 0.1), ValidationError);  // h > tau/4
    const History narrow = History::constant(Vector::Ones(1), -0.1, 0.0);
    CHECK_THROWS_AS(simulate(dde, narrow, 1.0, 0.05), HistoryError);
}

TEST_CASE("integral equation trivial fixed points") {
    const DelaySystem sys = reference::oscillator_pair();
    const Matrix B = reduced_input_matrix(sys);
    const ParametricGain g = gain(sys.A(), B, 0.3);
    const double tau = M_PI / 2;
    const double h = tau / 157.0;

    const History zero = History::constant(Vector::Zero(1), -tau - h, 0.0);
    const Trajectory t1 = simulate_ids(g.F, sys.A(), B, tau, zero, 5.0, h);
    for (const Vector& r : t1.states) CHECK(r.norm() == 0.0);

    const History ones = History::constant(Vector::Ones(1), -tau - h, 0.0);
    const Trajectory t2 = simulate_ids(Matrix::Zero(1, 4), sys.A(), B, tau, ones, 5.0, h);
    for (size_t i = 1; i < t2.states.size(); ++i) CHECK(t2.states[i].norm() == 0.0);
}

TEST_CASE("integral equation grid alignment is enforced") {
    const DelaySystem sys = reference::oscillator_pair();
    const Matrix B = reduced_input_matrix(sys);
    const ParametricGain g = gain(sys.A(), B, 0.3);
    const History ones = History::constant(Vector::Ones(1), -2.0, 0.0);
    CHECK_THROWS_AS(simulate_ids(g.F, sys.A(), B, M_PI / 2, ones, 5.0, 0.01), ValidationError);
}

TEST_CASE("decay fitting") {
    Trajectory traj;
    traj.step = 0.1;
    Vector v(2);
    v << 3.0, 4.0;
    for (int k = 0; k <= 100; ++k) {
        const double t = 0.1 * k;
        traj.times.push_back(t);
        traj.states.push_back(std::exp(-0.5 * t) * v);
        traj.derivatives.push_back(Vector::Zero(2));
    }
    CHECK(decay_rate(traj, 0.0, 10.0) == doctest::Approx(-0.5).epsilon(1e-6));

    Trajectory flat = traj;
    for (auto& x : flat.states) x = v;
    CHECK(decay_rate(flat, 0.0, 10.0) == doctest::Approx(0.0));

    Trajectory tiny = traj;
    tiny.states[50] = Vector::Zero(2);
    CHECK_THROWS_AS(decay_rate(tiny, 0.0, 10.0), NumericError);
}

TEST_CASE("trajectory scales linearly with the initial history") {
    const DelaySystem sys = reference::oscillator_pair();
    const ParametricGain g = gain(sys.A(), reduced_input_matrix(sys), 0.4);
    const LinearDDE dde = assemble_closed_loop(sys, tppf_gain(sys, g).K);
    Vector x0(4);
    x0 << 1, 0.5, -0.5, 0.25;
    const Trajectory a = simulate(dde, History::constant(x0, -2.0, 0.0), 10.0, 0.02);
    const Trajectory b = simulate(dde, History::constant((-2.5 * x0).eval(), -2.0, 0.0), 10.0, 0.02);
    double worst = 0.0, scale = 1.0;
    for (size_t i = 0; i < a.states.size(); ++i) {
        worst = std::max(worst, (b.states[i] + 2.5 * a.states[i]).norm());
        scale = std::max(scale, b.states[i].norm());
    }
    CHECK(worst <= 1e-10 * scale);
}

TEST_CASE("model-reduction loop keeps the reduced state on its exponential") {
    const DelaySystem sys = reference::oscillator_pair();
    const Matrix B = reduced_input_matrix(sys);
    const ParametricGain g = gain(sys.A(), B, 0.3);
    const double h = 0.005;
    const HistoryController mr(HistoryController::Kind::ModelReduction, sys, g, h);

    Vector x0(4);
    x0 << 1.0, -0.5, 0.5, 1.0;
    const double tau = total_delay(sys);
    const History init_state = History::constant(x0, -tau - h, 0.0);
    const History init_input = History::constant(Vector::Zero(1), -tau - h, 0.0);
    const Trajectory traj = simulate_dynamic(sys, mr, init_state, init_input, 10.0, h);

    // rebuild the input signal from the recorded samples and check the
    // invariance of the reduced state
    const Matrix Acl = sys.A() + B * g.F;
    InputSignal u(&init_input, 0.0, h, 1);
    for (const Vector& us : traj.inputs) u.push_sample(us);
    double worst = 0.0;
    for (size_t k = 0; k < traj.times.size(); k += 40) {
        const Vector z = predictor_state_z(sys, traj.states[k], u, traj.times[k], h);
        const Vector expected = linalg::expm(Acl, traj.times[k]) * x0;
        worst = std::max(worst, (z - expected).norm());
    }
    CHECK(worst <= 1e-4);
}

TEST_CASE("distributed law starts at the truncated gain and matching loops converge") {
    const DelaySystem sys = reference::oscillator_pair();
    const Matrix B = reduced_input_matrix(sys);
    const ParametricGain g = gain(sys.A(), B, 0.3);
    const double h = 0.01;
    const double tau = total_delay(sys);
    const HistoryController ppf(HistoryController::Kind::PPF, sys, g, h);

    Vector x0(4);
    x0 << 1.0, -0.5, 0.5, 1.0;
    const History init_state = History::constant(x0, -tau - h, 0.0);
    const History init_input = History::constant(Vector::Zero(1), -tau - h, 0.0);
    const Trajectory dyn = simulate_dynamic(sys, ppf, init_state, init_input, 60.0, h);

    // the first control sample equals the truncated static law
    CHECK((dyn.inputs.front() - tppf_gain(sys, g).K * x0).norm() <= 1e-10);

    const Trajectory stat =
        simulate(assemble_closed_loop(sys, tppf_gain(sys, g).K), init_state, 60.0, h);
    const double n0 = x0.norm();
    CHECK(dyn.final_state().norm() <= 0.05 * n0);
    CHECK(stat.final_state().norm() <= 0.05 * n0);
    // both loops settle; their gap shrinks with the states
    CHECK((dyn.final_state() - stat.final_state()).norm() <= 0.05 * n0);
}

}  // TEST_SUITE
