#pragma once

#include "delayctl/controllers.hpp"
#include "delayctl/delay_system.hpp"
#include "delayctl/history.hpp"

namespace delayctl {

struct DelayedTerm {
    Matrix A;    // n x n
    double tau;  // > 0
};

// Autonomous retarded system xdot = A0 x + sum_k A_k x(t - tau_k) with
// strictly increasing distinct positive delays.
struct LinearDDE {
    Matrix A0;
    std::vector<DelayedTerm> delayed;

    int dim() const { return static_cast<int>(A0.rows()); }
    double max_delay() const { return delayed.empty() ? 0.0 : delayed.back().tau; }
    double min_delay() const { return delayed.empty() ? 0.0 : delayed.front().tau; }
};

// Merges equal delays, prunes zero blocks, folds zero-delay terms into A0 and
// sorts the rest ascending.
LinearDDE make_linear_dde(Matrix A0, std::vector<DelayedTerm> terms);

// Closed loop of sys under the static feedback u = K x:
// A0 = A + sum_{tau_i = 0} B_i K, one delayed block per distinct positive delay.
LinearDDE assemble_closed_loop(const DelaySystem& sys, const Matrix& K);

// Classic RK4 with delayed-state lookups through cubic Hermite dense output.
// Requires h <= tau_min / 4 when delays exist and an initial history covering
// [-tau_max, 0].
Trajectory simulate(const LinearDDE& dde, const History& init, double T, double h);

// Closed loop under a history-dependent controller: at every step the control
// is evaluated from the current state and the accumulated input history, the
// history is extended, and the state advances by RK4 with the input treated
// as an interpolated signal (predictor pass plus two corrector passes).
Trajectory simulate_dynamic(const DelaySystem& sys, const HistoryController& hc,
                            const History& init_state, const History& init_input, double T,
                            double h);

// Integral delay equation rho(t) = -F \int_{t-tau}^{t} e^{(A+BF)(t-s)} B rho(s) ds
// advanced on a grid aligned with tau (h must divide tau); each step solves
// the m x m system (I + (h/2) F B) rho = -F * (trapezoid over the known past).
Trajectory simulate_ids(const Matrix& F, const Matrix& A, const Matrix& B, double tau,
                        const History& init, double T, double h);

// Least-squares slope of log ||x(t)|| over the window.
double decay_rate(const Trajectory& traj, double t0, double t1);

}  // namespace delayctl
