#pragma once

#include <string>
#include <vector>

#include "delayctl/consensus.hpp"
#include "delayctl/delay_system.hpp"
#include "delayctl/history.hpp"
#include "delayctl/parametric_gain.hpp"
#include "delayctl/spectrum.hpp"

namespace delayctl::io {

// Everything numeric in emitted files carries 17 significant digits.
std::string fmt(double v);
std::string fmt(const Matrix& M);  // nested JSON arrays

struct LoadedSystem {
    DelaySystem system;
    std::vector<int> permutation;  // original channel index per sorted slot
};

// {"A": [[...]], "channels": [{"B": [[...]], "tau": x}, ...]}; channels are
// sorted by delay on ingestion and the applied permutation is reported.
LoadedSystem load_system(const std::string& path);
void save_system(const DelaySystem& sys, const std::string& path);

// {"alpha": [[...]]}
Matrix load_network_adjacency(const std::string& path);
void save_network_adjacency(const Matrix& alpha, const std::string& path);

struct GainArtifacts {
    double gamma = 0.0;
    Matrix F, K_tpf, K_tppf, W, P;
    double residual_are = 0.0;
    double residual_lyapunov = 0.0;
    double residual_commutation = 0.0;
    double trace_gap = 0.0;  // |tr(B^T P B) - n gamma| / (n gamma)
};
void save_gain(const GainArtifacts& g, const std::string& path);
GainArtifacts load_gain(const std::string& path);

void save_sweep_csv(const spectrum::SweepResult& r, const std::string& path);
void save_sweep_summary(const spectrum::SweepResult& r, const std::string& path);
spectrum::SweepResult load_sweep_summary(const std::string& path);

// header `t, x1..xn[, u1..um]`, one row per step
void save_trajectory_csv(const Trajectory& traj, const std::string& path);

// header `t, d, |x1|`
void save_consensus_csv(const consensus::ConsensusRun& run, const std::string& path);

}  // namespace delayctl::io
