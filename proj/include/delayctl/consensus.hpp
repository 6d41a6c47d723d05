#pragma once

#include "delayctl/controllers.hpp"
#include "delayctl/dde_sim.hpp"

namespace delayctl::consensus {

using linalg::Complex;

// Weighted digraph of N agents.  alpha(i, j) > 0 means agent i receives agent
// j's state (edge j -> i in the information-flow sense).
struct DirectedNetwork {
    int N = 0;
    Matrix alpha;
    Matrix laplacian;
    std::vector<Complex> eigenvalues;
    bool spanning_tree = false;
};

// Validates the weights (non-negative, zero diagonal), forms the Laplacian
// with exactly zero row sums, computes its spectrum and the spanning-tree flag.
DirectedNetwork build_network(const Matrix& alpha);

// True iff some root reaches every node along information-flow edges.
bool has_spanning_tree(const Matrix& alpha);

// max over nonzero Laplacian eigenvalues of 1 / Re(lambda); requires a
// spanning tree (otherwise positive real parts are not guaranteed).
double mu_bound(const DirectedNetwork& net);

// Protocol gain mu * K_TPPF applied to the neighbourhood disagreement z_i.
Matrix build_protocol(const DelaySystem& sys, const DirectedNetwork& net, double gamma, double mu);

struct ConsensusRun {
    int N = 0;
    int n = 0;
    std::vector<Trajectory> agents;       // one per agent
    std::vector<double> times;
    std::vector<double> disagreement;     // max_i ||x_i - x_1||
    std::vector<double> reference_norm;   // ||x_1||
};

// Assembles the Nn-dimensional closed loop (I (x) A plus L (x) B_k K blocks per
// delay), simulates from constant initial histories and splits the result per
// agent.
ConsensusRun simulate_network(const DelaySystem& sys, const DirectedNetwork& net, double gamma,
                              double mu, const std::vector<Vector>& initial_states, double T,
                              double h);

struct GrowthFit {
    int n_star = 1;      // largest eigenvalue-cluster size of A (multiplicity bound)
    double k = 0.0;      // smallest envelope constant on the fit window
    bool holds = false;  // envelope still valid on the tail of the horizon
};

// Fits ||x_1(t)|| <= k (1 + t^{n_star - 1}).  k is the smallest feasible
// constant over the first two thirds of the horizon; `holds` reports whether
// the same envelope (with 5% slack) covers the rest.  Requires consensus to
// have been reached (disagreement decayed by at least 10x).
GrowthFit reference_growth_check(const ConsensusRun& run, const DelaySystem& sys);

}  // namespace delayctl::consensus
