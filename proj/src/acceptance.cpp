#include "delayctl/acceptance.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "delayctl/consensus.hpp"
#include "delayctl/controllers.hpp"
#include "delayctl/dde_sim.hpp"
#include "delayctl/errors.hpp"
#include "delayctl/random_systems.hpp"
#include "delayctl/reference_models.hpp"
#include "delayctl/spectrum.hpp"

namespace delayctl::acceptance {

namespace {

using linalg::Complex;

std::string num(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) ok = false;
        if (detail.tellp() > 0) detail << "; ";
        detail << what << (cond ? " ok" : " FAILED");
    }
    CriterionResult result(const std::string& id, const std::string& name, bool counts = true) {
        return {id, name, ok, counts, detail.str()};
    }
};

// Sweeps of the bundled example are shared between criteria 1 and 2.
struct SweepPair {
    spectrum::SweepResult tpf;
    spectrum::SweepResult tppf;
};

const SweepPair& example_sweeps(int workers) {
    static SweepPair pair = [workers] {
        const DelaySystem sys = reference::oscillator_pair();
        SweepPair p;
        p.tpf = spectrum::sweep(sys, StaticGain::Kind::TPF, 0.05, 0.40, 40, workers);
        p.tppf = spectrum::sweep(sys, StaticGain::Kind::TPPF, 0.05, 1.30, 40, workers);
        return p;
    }();
    return pair;
}

std::vector<CriterionResult> criterion_1(int workers) {
    const auto& sw = example_sweeps(workers).tpf;
    Check c;
    c.expect(std::abs(sw.gamma_sup - 0.276) <= 0.005,
             "gamma_sup=" + num(sw.gamma_sup) + " vs 0.276+-0.005");
    c.expect(std::abs(sw.gamma_opt - 0.221) <= 0.005,
             "gamma_opt=" + num(sw.gamma_opt) + " vs 0.221+-0.005");
    c.expect(std::abs(sw.lambda_max_min - (-0.113)) <= 0.005,
             "lambda_max_min=" + num(sw.lambda_max_min) + " vs -0.113+-0.005");
    return {c.result("1", "direct-gain sweep of the bundled example")};
}

std::vector<CriterionResult> criterion_2(int workers) {
    const auto& pair = example_sweeps(workers);
    const auto& sw = pair.tppf;
    Check c;
    c.expect(std::abs(sw.gamma_sup - 1.067) <= 0.01,
             "gamma_sup=" + num(sw.gamma_sup) + " vs 1.067+-0.01");
    c.expect(std::abs(sw.gamma_opt - 0.447) <= 0.01,
             "gamma_opt=" + num(sw.gamma_opt) + " vs 0.447+-0.01");
    c.expect(std::abs(sw.lambda_max_min - (-0.278)) <= 0.005,
             "lambda_max_min=" + num(sw.lambda_max_min) + " vs -0.278+-0.005");
    c.expect(sw.gamma_sup > pair.tpf.gamma_sup, "stability range dominance");
    c.expect(sw.lambda_max_min < pair.tpf.lambda_max_min, "decay-rate dominance");
    return {c.result("2", "predictor-gain sweep of the bundled example and dominance")};
}

std::vector<CriterionResult> criterion_3(int) {
    const DelaySystem sys = reference::oscillator_pair();
    const Matrix B = reduced_input_matrix(sys);

    // Value as published alongside the example.  It is provably inconsistent
    // with the example's own closed-form gains (the trace identity fails on
    // the pair); only the second entry differs, 1/4-pi printed for pi/4-1.
    // The consistency row below checks the gain-consistent value instead.
    Eigen::Vector4d published(-0.5, 0.25 - M_PI, -1.0, 0.0);
    Eigen::Vector4d consistent(-0.5, M_PI / 4.0 - 1.0, -1.0, 0.0);

    Check lit;
    const double err_lit = (B.col(0) - published).cwiseAbs().maxCoeff();
    lit.expect(err_lit <= 1e-12, "entrywise error vs published value " + num(err_lit) + " <= 1e-12");
    CriterionResult main = lit.result("3", "reduced input matrix matches the published value");

    Check cons;
    const double err_cons = (B.col(0) - consistent).cwiseAbs().maxCoeff();
    cons.expect(err_cons <= 1e-12,
                "entrywise error vs gain-consistent value " + num(err_cons) + " <= 1e-12");
    CriterionResult extra =
        cons.result("3-consistency", "reduced input matrix matches the gain-consistent value",
                    /*counts=*/false);
    return {main, extra};
}

std::vector<CriterionResult> criterion_4(int) {
    const DelaySystem sys = reference::oscillator_pair();
    const Matrix B = reduced_input_matrix(sys);
    Check c;
    for (double g : {0.1, 0.2, 0.221, 0.447}) {
        const ParametricGain pg = gain(sys.A(), B, g);
        const double err_tpf =
            (tpf_gain(sys, pg).K - reference::oscillator_pair_tpf_gain(g)).cwiseAbs().maxCoeff();
        const double err_tppf =
            (tppf_gain(sys, pg).K - reference::oscillator_pair_tppf_gain(g)).cwiseAbs().maxCoeff();
        c.expect(err_tpf <= 1e-8, "TPF closed form at gamma=" + num(g) + " err=" + num(err_tpf));
        c.expect(err_tppf <= 1e-8, "TPPF closed form at gamma=" + num(g) + " err=" + num(err_tppf));
    }
    return {c.result("4", "computed gains match the closed forms")};
}

std::vector<CriterionResult> criterion_5(int) {
    std::mt19937 rng(0xa5a5u);
    std::uniform_real_distribution<double> tau_draw(0.5, 2.0);
    Check c;
    int worst_reported = 0;
    for (int draw = 0; draw < 20; ++draw) {
        const int n = 2 * (1 + draw % 4);  // 2, 4, 6, 8
        const int m = 1 + draw % 2;
        const auto sysab = delayctl::testing::random_imaginary_axis_system(rng, n, m);
        const double tau = tau_draw(rng);
        for (double g : {0.05, 0.3, 1.0}) {
            const ParametricGain pg = gain(sysab.A, sysab.B, g);
            const Matrix& P = pg.P;
            const double are = (sysab.A.transpose() * P + P * sysab.A -
                                P * sysab.B * sysab.B.transpose() * P + g * P)
                                   .norm();
            const double trace_gap =
                std::abs((sysab.B.transpose() * P * sysab.B).trace() - n * g) / (n * g);
            Eigen::SelfAdjointEigenSolver<Matrix> psd(
                (n * g * P - P * sysab.B * sysab.B.transpose() * P).eval());
            const double hurwitz = linalg::spectral_abscissa(sysab.A + sysab.B * pg.F);
            double comm = 0.0;
            for (double t : {0.0, 1.0, tau})
                comm = std::max(comm, commutation_residual(pg, sysab.A, t));

            const bool ok = are <= 1e-8 * P.norm() && trace_gap <= 1e-8 &&
                            psd.eigenvalues().minCoeff() >= -1e-8 * P.norm() && hurwitz < 0 &&
                            comm <= 1e-8;
            if (!ok && worst_reported < 3) {
                ++worst_reported;
                c.expect(false, "draw " + std::to_string(draw) + " gamma=" + num(g) +
                                    ": are=" + num(are / P.norm()) + " trace=" + num(trace_gap) +
                                    " psd=" + num(psd.eigenvalues().minCoeff() / P.norm()) +
                                    " hurwitz=" + num(hurwitz) + " comm=" + num(comm));
            }
        }
    }
    c.expect(true, "20 systems x 3 gammas: Riccati residual, trace identity, semidefiniteness, "
                   "Hurwitz and commutation checks");
    return {c.result("5", "parametric design identity suite on random systems")};
}

// forced linear ODE xdot = A x + f(t), classic RK4; the step is shrunk so the
// grid lands exactly on t1
Vector integrate_forced(const Matrix& A, const std::function<Vector(double)>& f, Vector x,
                        double t0, double t1, double h) {
    const long long steps =
        std::max<long long>(1, static_cast<long long>(std::ceil((t1 - t0) / h - 1e-12)));
    const double he = (t1 - t0) / static_cast<double>(steps);
    for (long long k = 0; k < steps; ++k) {
        const double t = t0 + static_cast<double>(k) * he;
        const Vector k1 = A * x + f(t);
        const Vector k2 = A * (x + (he / 2) * k1) + f(t + he / 2);
        const Vector k3 = A * (x + (he / 2) * k2) + f(t + he / 2);
        const Vector k4 = A * (x + he * k3) + f(t + he);
        x += (he / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return x;
}

std::vector<CriterionResult> criterion_6(int) {
    const DelaySystem sys = reference::oscillator_pair();
    const double tau = total_delay(sys);
    std::mt19937 rng(0xbeefu);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    Check c;
    for (int trial = 0; trial < 3; ++trial) {
        // random smooth input: three sinusoids
        const double a0 = amp(rng), a1 = amp(rng), a2 = amp(rng);
        const double w1 = 0.7 + 0.5 * trial, w2 = 1.9 + 0.3 * trial;
        auto u_fn = [=](double t) {
            Vector v(1);
            v << a0 + a1 * std::sin(w1 * t) + a2 * std::cos(w2 * t);
            return v;
        };
        auto du_fn = [=](double t) {
            Vector v(1);
            v << a1 * w1 * std::cos(w1 * t) - a2 * w2 * std::sin(w2 * t);
            return v;
        };
        const History u_hist = History::sample(u_fn, du_fn, -tau - 0.5, 8.0, 0.005);

        // Lemma-1 route equivalence: recursive state equals the direct one
        double worst1 = 0.0;
        std::uniform_real_distribution<double> xr(-2.0, 2.0);
        for (double t : {0.0, 1.3, 4.0, 7.5}) {
            Vector x(4);
            for (int i = 0; i < 4; ++i) x(i) = xr(rng);
            const Vector z = predictor_state_z(sys, x, u_hist, t, 0.005);
            const Vector y = predictor_state_y_recursive(sys, x, u_hist, t, 0.005);
            worst1 = std::max(worst1, (y - z).norm() / (1.0 + z.norm()));
        }
        c.expect(worst1 <= 1e-6, "trial " + std::to_string(trial) + " route equivalence err=" + num(worst1));

        // Lemma-2 prediction: y(t) anticipates the forced trajectory
        const double t_eval = 2.0;
        auto forcing = [&](double t) {
            Vector f = Vector::Zero(4);
            for (const InputChannel& ch : sys.channels()) f += ch.B * u_fn(t - ch.tau);
            return f;
        };
        const Vector x_t = integrate_forced(sys.A(), forcing, Vector::Zero(4), -tau - 0.4, t_eval, 0.001);
        const Vector x_pred = integrate_forced(sys.A(), forcing, x_t, t_eval, t_eval + tau, 0.001);
        Vector rhs = linalg::expm(-sys.A(), tau) * x_pred;
        for (const InputChannel& ch : sys.channels()) {
            // int_t^{t+tau-tau_i} e^{A(t-s-tau_i)} B_i u(s) ds, fine Simpson
            const double hi = tau - ch.tau;
            const int parts = 4000;
            Vector acc = Vector::Zero(4);
            for (int p = 0; p < parts; ++p) {
                const double a = hi * p / parts, b = hi * (p + 1) / parts;
                const double mid = 0.5 * (a + b);
                acc += ((b - a) / 6.0) *
                       (linalg::expm(sys.A(), -a - ch.tau) * ch.B * u_fn(t_eval + a) +
                        4.0 * (linalg::expm(sys.A(), -mid - ch.tau) * ch.B * u_fn(t_eval + mid)) +
                        linalg::expm(sys.A(), -b - ch.tau) * ch.B * u_fn(t_eval + b));
            }
            rhs -= acc;
        }
        const Vector y = predictor_state_y_recursive(sys, x_t, u_hist, t_eval, 0.005);
        const double err2 = (y - rhs).norm() / (1.0 + rhs.norm());
        c.expect(err2 <= 1e-6, "trial " + std::to_string(trial) + " prediction identity err=" + num(err2));
    }
    return {c.result("6", "predictor-state route equivalence and prediction identity")};
}

std::vector<CriterionResult> criterion_7(int) {
    const DelaySystem sys = reference::oscillator_pair();
    const Matrix B = reduced_input_matrix(sys);
    const double tau = total_delay(sys);
    Check c;
    for (double g : {0.1, 0.3, 0.447, 0.9, 1.2}) {
        const ParametricGain pg = gain(sys.A(), B, g);
        const double lam = spectrum::lambda_max(assemble_closed_loop(sys, tppf_gain(sys, pg).K));

        const long long K = 157;
        const double h = tau / static_cast<double>(K);
        const History init = History::constant(Vector::Ones(1), -tau - h, 0.0);
        const Trajectory rho = simulate_ids(pg.F, sys.A(), B, tau, init, 60.0, h);
        double early = 0.0, late = 0.0;
        for (size_t i = 0; i < rho.times.size(); ++i) {
            if (rho.times[i] < 30.0)
                early += rho.states[i].norm();
            else
                late += rho.states[i].norm();
        }
        const bool ids_decays = late < early;
        c.expect(ids_decays == (lam < 0), "gamma=" + num(g) + " lambda=" + num(lam) +
                                              " ids_decays=" + (ids_decays ? "yes" : "no"));
    }
    return {c.result("7", "integral-delay-equation stability agrees with the spectral verdict")};
}

std::vector<CriterionResult> criterion_8(int) {
    const DelaySystem sys = reference::oscillator_pair();
    const Matrix B = reduced_input_matrix(sys);
    Vector x0(4);
    x0 << 1.0, -0.5, 0.5, 1.0;
    const History init = History::constant(x0, -total_delay(sys) - 0.02, 0.0);
    Check c;
    {
        const ParametricGain pg = gain(sys.A(), B, 0.221);
        const Trajectory traj =
            simulate(assemble_closed_loop(sys, tpf_gain(sys, pg).K), init, 150.0, 0.01);
        const double rate = decay_rate(traj, 50.0, 150.0);
        c.expect(std::abs(rate - (-0.113)) <= 0.03, "TPF fitted rate " + num(rate) + " vs -0.113+-0.03");
    }
    {
        const ParametricGain pg = gain(sys.A(), B, 0.447);
        const Trajectory traj =
            simulate(assemble_closed_loop(sys, tppf_gain(sys, pg).K), init, 150.0, 0.01);
        const double rate = decay_rate(traj, 50.0, 150.0);
        c.expect(std::abs(rate - (-0.278)) <= 0.03, "TPPF fitted rate " + num(rate) + " vs -0.278+-0.03");
    }
    return {c.result("8", "simulated closed-loop decay rates match the spectral optima")};
}

std::vector<CriterionResult> criterion_9(int) {
    const DelaySystem sys = reference::oscillator_pair();
    const consensus::DirectedNetwork net = consensus::build_network(reference::six_agent_adjacency());
    Check c;

    std::vector<double> expected{0, 1, 1, 2, 2, 3};
    std::vector<Complex> evs = net.eigenvalues;
    std::sort(evs.begin(), evs.end(), [](const Complex& a, const Complex& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    double eig_err = 0.0;
    for (size_t i = 0; i < evs.size(); ++i)
        eig_err = std::max(eig_err, std::abs(evs[i] - Complex(expected[i], 0.0)));
    c.expect(eig_err <= 1e-8, "Laplacian spectrum {0,1,1,2,2,3} err=" + num(eig_err));
    c.expect(net.spanning_tree, "directed spanning tree detected");
    const double mu = consensus::mu_bound(net);
    c.expect(std::abs(mu - 1.0) <= 1e-9, "mu bound " + num(mu) + " == 1");

    std::mt19937 rng(0x2024u);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<Vector> x0(6);
    for (auto& v : x0) {
        v = Vector(4);
        for (int i = 0; i < 4; ++i) v(i) = unit(rng);
    }
    const consensus::ConsensusRun run = consensus::simulate_network(sys, net, 0.1, 1.0, x0, 200.0, 0.01);
    const double ratio = run.disagreement.back() / run.disagreement.front();
    c.expect(ratio <= 1e-2, "disagreement ratio d(T)/d(0)=" + num(ratio) + " <= 1e-2");
    return {c.result("9", "six-agent consensus example")};
}

std::vector<CriterionResult> criterion_10(int) {
    Check c;

    {  // integrator order, ODE case
        Matrix A0(2, 2);
        A0 << -0.1, 1.0, -1.0, -0.1;
        Vector x0(2);
        x0 << 1.0, 0.3;
        const History init = History::constant(x0, -1.0, 0.0);
        const LinearDDE ode{A0, {}};
        auto terminal = [&](double h) { return simulate(ode, init, 5.0, h).final_state(); };
        const Vector ref = terminal(0.02 / 16.0);
        const double e1 = (terminal(0.02) - ref).norm();
        const double e2 = (terminal(0.01) - ref).norm();
        c.expect(e1 / e2 >= 12.0, "ODE order factor " + num(e1 / e2) + " >= 12");
    }
    {  // integrator order, scalar delayed case
        Matrix A0 = Matrix::Zero(1, 1), Ad(1, 1);
        Ad << -1.0;
        const LinearDDE dde = make_linear_dde(A0, {{Ad, 1.0}});
        const History init = History::sample([](double t) { return Vector::Constant(1, std::cos(t)); },
                                             [](double t) { return Vector::Constant(1, -std::sin(t)); },
                                             -1.0, 0.0, 0.01);
        auto terminal = [&](double h) { return simulate(dde, init, 4.0, h).final_state(); };
        const Vector ref = terminal(0.05 / 16.0);
        const double e1 = (terminal(0.05) - ref).norm();
        const double e2 = (terminal(0.025) - ref).norm();
        c.expect(e1 / e2 >= 8.0, "delayed order factor " + num(e1 / e2) + " >= 8");
    }
    {  // linearity in the initial history
        Matrix A0 = Matrix::Zero(1, 1), Ad(1, 1);
        Ad << -1.0;
        const LinearDDE dde = make_linear_dde(A0, {{Ad, 1.0}});
        const History init = History::constant(Vector::Ones(1), -1.0, 0.0);
        const History init3 = History::constant(3.0 * Vector::Ones(1), -1.0, 0.0);
        const Trajectory t1 = simulate(dde, init, 6.0, 0.05);
        const Trajectory t3 = simulate(dde, init3, 6.0, 0.05);
        double worst = 0.0, scale = 0.0;
        for (size_t i = 0; i < t1.states.size(); ++i) {
            worst = std::max(worst, (3.0 * t1.states[i] - t3.states[i]).norm());
            scale = std::max(scale, t3.states[i].norm());
        }
        c.expect(worst <= 1e-10 * std::max(scale, 1.0), "initial-history linearity err=" + num(worst));
    }
    {  // conjugate-root symmetry
        const DelaySystem sys = reference::oscillator_pair();
        const ParametricGain pg = gain(sys.A(), reduced_input_matrix(sys), 0.3);
        const LinearDDE dde = assemble_closed_loop(sys, tppf_gain(sys, pg).K);
        const spectrum::RootSet roots = spectrum::rightmost_roots(dde, 12, 48);
        double worst = 0.0;
        for (const spectrum::Root& r : roots.roots) {
            if (std::abs(r.s.imag()) < 1e-9) continue;
            const Complex conj = std::conj(r.s);
            worst = std::max(worst, std::abs(spectrum::char_value(dde, conj)) /
                                        spectrum::char_scale(dde, conj));
        }
        c.expect(worst <= 1e-8, "conjugate symmetry residual " + num(worst));
    }
    {  // Laplacian row sums
        std::mt19937 rng(7u);
        std::uniform_real_distribution<double> unit(0.0, 2.0);
        Matrix alpha = Matrix::Zero(5, 5);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                if (i != j && unit(rng) > 0.8) alpha(i, j) = unit(rng);
        const consensus::DirectedNetwork net = consensus::build_network(alpha);
        const double worst = net.laplacian.rowwise().sum().cwiseAbs().maxCoeff();
        c.expect(worst <= 1e-12 * std::max(1.0, alpha.maxCoeff()), "row sums " + num(worst));
    }
    {  // modal decoupling of the networked loop
        Matrix A(2, 2);
        A << 0, 1, -1, 0;
        Matrix B1(2, 1), B2(2, 1);
        B1 << 0, 1;
        B2 << 1, 0;
        const DelaySystem plant(A, {{B1, 0.0}, {B2, 0.8}});
        Matrix alpha = Matrix::Ones(3, 3) - Matrix::Identity(3, 3);
        const consensus::DirectedNetwork net = consensus::build_network(alpha);
        const double gamma = 0.2;
        const Matrix K = consensus::build_protocol(plant, net, gamma, consensus::mu_bound(net));

        std::vector<Vector> x0(3);
        for (int i = 0; i < 3; ++i) {
            x0[i] = Vector(2);
            x0[i] << 0.5 + i, -0.3 * i;
        }
        const consensus::ConsensusRun run =
            consensus::simulate_network(plant, net, gamma, consensus::mu_bound(net), x0, 6.0, 0.02);

        Eigen::EigenSolver<Matrix> es(net.laplacian);
        Matrix U = es.eigenvectors().real();
        Matrix Uinv = U.inverse();
        Vector stacked(6);
        for (int i = 0; i < 3; ++i) stacked.segment(2 * i, 2) = x0[i];
        const Vector chi0 = linalg::kron(Uinv, Matrix::Identity(2, 2)) * stacked;

        std::vector<Trajectory> modes;
        for (int i = 0; i < 3; ++i) {
            const double lam = es.eigenvalues()(i).real();
            std::vector<DelayedTerm> terms;
            for (const InputChannel& ch : plant.channels()) terms.push_back({lam * (ch.B * K), ch.tau});
            const LinearDDE mode_dde = make_linear_dde(A, std::move(terms));
            const History init = History::constant(chi0.segment(2 * i, 2), -1.0, 0.0);
            modes.push_back(simulate(mode_dde, init, 6.0, 0.02));
        }
        const Matrix Ublock = linalg::kron(U, Matrix::Identity(2, 2));
        double worst = 0.0, scale = 1.0;
        for (size_t s = 0; s < run.times.size(); ++s) {
            Vector chi(6), xblk(6);
            for (int i = 0; i < 3; ++i) {
                chi.segment(2 * i, 2) = modes[i].states[s];
                xblk.segment(2 * i, 2) = run.agents[i].states[s];
            }
            worst = std::max(worst, (Ublock * chi - xblk).norm());
            scale = std::max(scale, xblk.norm());
        }
        c.expect(worst / scale <= 1e-6, "modal decoupling err=" + num(worst / scale));
    }
    {  // relabeling equivariance
        const DelaySystem sys = reference::oscillator_pair();
        const Matrix alpha = reference::six_agent_adjacency();
        std::vector<int> perm{3, 0, 5, 1, 4, 2};
        Matrix Pm = Matrix::Zero(6, 6);
        for (int i = 0; i < 6; ++i) Pm(i, perm[i]) = 1.0;
        const Matrix alpha_p = Pm * alpha * Pm.transpose();

        std::mt19937 rng(11u);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        std::vector<Vector> x0(6), x0p(6);
        for (int i = 0; i < 6; ++i) {
            x0[i] = Vector(4);
            for (int k = 0; k < 4; ++k) x0[i](k) = unit(rng);
        }
        for (int i = 0; i < 6; ++i) x0p[i] = x0[perm[i]];

        const auto run = consensus::simulate_network(sys, consensus::build_network(alpha), 0.1,
                                                     1.0, x0, 3.0, 0.02);
        const auto runp = consensus::simulate_network(sys, consensus::build_network(alpha_p), 0.1,
                                                      1.0, x0p, 3.0, 0.02);
        double worst = 0.0;
        for (size_t s = 0; s < run.times.size(); ++s)
            for (int i = 0; i < 6; ++i)
                worst = std::max(worst,
                                 (runp.agents[i].states[s] - run.agents[perm[i]].states[s]).norm());
        c.expect(worst <= 1e-9, "relabeling equivariance err=" + num(worst));
    }
    return {c.result("10", "module property suites")};
}

}  // namespace

std::vector<CriterionResult> run_criterion(const std::string& id, int workers) {
    if (id == "1") return criterion_1(workers);
    if (id == "2") return criterion_2(workers);
    if (id == "3") return criterion_3(workers);
    if (id == "4") return criterion_4(workers);
    if (id == "5") return criterion_5(workers);
    if (id == "6") return criterion_6(workers);
    if (id == "7") return criterion_7(workers);
    if (id == "8") return criterion_8(workers);
    if (id == "9") return criterion_9(workers);
    if (id == "10") return criterion_10(workers);
    throw ValidationError("unknown acceptance criterion id: " + id);
}

std::vector<CriterionResult> run_all(int workers) {
    std::vector<CriterionResult> all;
    for (int i = 1; i <= 10; ++i)
        for (CriterionResult& r : run_criterion(std::to_string(i), workers))
            all.push_back(std::move(r));
    return all;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const CriterionResult& r : results)
        if (r.counts && !r.passed) return false;
    return true;
}

}  // namespace delayctl::acceptance
