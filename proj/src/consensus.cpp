#include "delayctl/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "delayctl/errors.hpp"

namespace delayctl::consensus {

bool has_spanning_tree(const Matrix& alpha) {
    const int N = static_cast<int>(alpha.rows());
    for (int root = 0; root < N; ++root) {
        std::vector<bool> seen(N, false);
        std::queue<int> frontier;
        frontier.push(root);
        seen[root] = true;
        int reached = 1;
        while (!frontier.empty()) {
            const int v = frontier.front();
            frontier.pop();
            for (int w = 0; w < N; ++w) {
                // w listens to v
                if (!seen[w] && alpha(w, v) > 0) {
                    seen[w] = true;
                    ++reached;
                    frontier.push(w);
                }
            }
        }
        if (reached == N) return true;
    }
    return false;
}

DirectedNetwork build_network(const Matrix& alpha) {
    linalg::require_square(alpha, "build_network");
    linalg::require_finite(alpha, "build_network");
    const int N = static_cast<int>(alpha.rows());
    for (int i = 0; i < N; ++i) {
        if (alpha(i, i) != 0.0)
            throw ValidationError("build_network: adjacency diagonal must be zero");
        for (int j = 0; j < N; ++j)
            if (alpha(i, j) < 0.0) throw ValidationError("build_network: negative edge weight");
    }

    DirectedNetwork net;
    net.N = N;
    net.alpha = alpha;
    net.laplacian = Matrix::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        double degree = 0.0;
        for (int j = 0; j < N; ++j) {
            if (j == i) continue;
            net.laplacian(i, j) = -alpha(i, j);
            degree += alpha(i, j);
        }
        net.laplacian(i, i) = degree;  // row sums are exactly zero by construction
    }
    net.eigenvalues = linalg::eigenvalues(net.laplacian);
    net.spanning_tree = has_spanning_tree(alpha);
    if (net.spanning_tree) {
        // consistency: a spanning tree guarantees positive real parts for the
        // nonzero Laplacian eigenvalues
        const double zero_tol = 1e-9 * (1.0 + net.laplacian.norm());
        for (const Complex& ev : net.eigenvalues)
            if (std::abs(ev) > zero_tol && ev.real() <= 0.0)
                throw NumericError("build_network: spanning tree present but a nonzero "
                                   "Laplacian eigenvalue has non-positive real part");
    }
    return net;
}

double mu_bound(const DirectedNetwork& net) {
    if (!net.spanning_tree)
        throw AssumptionError("mu_bound: network has no directed spanning tree, nonzero "
                              "Laplacian eigenvalues need not have positive real parts");
    const double zero_tol = 1e-9 * (1.0 + net.laplacian.norm());
    double bound = 0.0;
    for (const Complex& ev : net.eigenvalues) {
        if (std::abs(ev) <= zero_tol) continue;
        if (ev.real() <= 0)
            throw NumericError("mu_bound: nonzero Laplacian eigenvalue with non-positive real part");
        bound = std::max(bound, 1.0 / ev.real());
    }
    return bound;
}

Matrix build_protocol(const DelaySystem& sys, const DirectedNetwork& net, double gamma,
                      double mu) {
    const double bound = mu_bound(net);
    if (mu < bound - 1e-12)
        throw ValidationError("build_protocol: mu = " + std::to_string(mu) +
                              " is below the network bound " + std::to_string(bound));
    const Matrix B = reduced_input_matrix(sys);
    const ParametricGain g = gain(sys.A(), B, gamma);
    return mu * tppf_gain(sys, g).K;
}

ConsensusRun simulate_network(const DelaySystem& sys, const DirectedNetwork& net, double gamma,
                              double mu, const std::vector<Vector>& initial_states, double T,
                              double h) {
    const int N = net.N;
    const int n = sys.state_dim();
    if (static_cast<int>(initial_states.size()) != N)
        throw DimensionError("simulate_network: need one initial state per agent");
    for (const Vector& x0 : initial_states)
        if (x0.size() != n) throw DimensionError("simulate_network: initial state dimension");

    const Matrix K = build_protocol(sys, net, gamma, mu);

    std::vector<DelayedTerm> terms;
    Matrix A0 = linalg::kron(Matrix::Identity(N, N), sys.A());
    for (const InputChannel& ch : sys.channels())
        terms.push_back({linalg::kron(net.laplacian, ch.B * K), ch.tau});
    const LinearDDE dde = make_linear_dde(std::move(A0), std::move(terms));

    Vector stacked(N * n);
    for (int i = 0; i < N; ++i) stacked.segment(i * n, n) = initial_states[i];
    const double tau_max = std::max(sys.max_delay(), h);
    const History init = History::constant(stacked, -tau_max - h, 0.0);

    const Trajectory block = simulate(dde, init, T, h);

    ConsensusRun run;
    run.N = N;
    run.n = n;
    run.times = block.times;
    run.agents.resize(N);
    for (int i = 0; i < N; ++i) {
        run.agents[i].step = block.step;
        run.agents[i].times = block.times;
        run.agents[i].states.reserve(block.states.size());
        run.agents[i].derivatives.reserve(block.states.size());
    }
    run.disagreement.reserve(block.states.size());
    run.reference_norm.reserve(block.states.size());
    for (size_t s = 0; s < block.states.size(); ++s) {
        for (int i = 0; i < N; ++i) {
            run.agents[i].states.push_back(block.states[s].segment(i * n, n));
            run.agents[i].derivatives.push_back(block.derivatives[s].segment(i * n, n));
        }
        double worst = 0.0;
        for (int i = 1; i < N; ++i)
            worst = std::max(worst,
                             (block.states[s].segment(i * n, n) - block.states[s].head(n)).norm());
        run.disagreement.push_back(worst);
        run.reference_norm.push_back(block.states[s].head(n).norm());
    }
    return run;
}

GrowthFit reference_growth_check(const ConsensusRun& run, const DelaySystem& sys) {
    if (run.disagreement.empty()) throw ValidationError("reference_growth_check: empty run");
    const double d0 = run.disagreement.front();
    const double dT = run.disagreement.back();
    if (!(d0 > 0) || dT > d0 / 10.0)
        throw ValidationError("reference_growth_check: consensus not reached "
                              "(disagreement did not decay by 10x)");

    // multiplicity bound: largest eigenvalue cluster of A
    std::vector<Complex> evs = linalg::eigenvalues(sys.A());
    const double tol = 1e-6 * (1.0 + sys.A().norm());
    std::vector<bool> used(evs.size(), false);
    int n_star = 1;
    for (size_t i = 0; i < evs.size(); ++i) {
        if (used[i]) continue;
        int cluster = 0;
        for (size_t j = i; j < evs.size(); ++j) {
            if (!used[j] && std::abs(evs[j] - evs[i]) <= tol) {
                used[j] = true;
                ++cluster;
            }
        }
        n_star = std::max(n_star, cluster);
    }

    GrowthFit fit;
    fit.n_star = n_star;
    const double t_end = run.times.back();
    const double t_split = t_end * (2.0 / 3.0);
    double k_fit = 0.0, k_tail = 0.0;
    for (size_t s = 0; s < run.times.size(); ++s) {
        const double t = run.times[s];
        const double envelope = 1.0 + std::pow(t, n_star - 1);
        const double ratio = run.reference_norm[s] / envelope;
        if (t <= t_split)
            k_fit = std::max(k_fit, ratio);
        else
            k_tail = std::max(k_tail, ratio);
    }
    fit.k = k_fit;
    fit.holds = k_tail <= 1.05 * k_fit;
    return fit;
}

}  // namespace delayctl::consensus
