#pragma once

#include "delayctl/controllers.hpp"
#include "delayctl/dde_sim.hpp"

namespace delayctl::spectrum {

using linalg::Complex;
using linalg::ComplexMatrix;

// det(sI - A0 - sum_k A_k e^{-tau_k s}); residuals are reported relative to
// the Hadamard row-norm bound of the same matrix.
Complex char_value(const LinearDDE& dde, Complex s);
double char_scale(const LinearDDE& dde, Complex s);

struct Root {
    Complex s;
    double residual;  // |c(s)| / scale after refinement
};

struct RootSet {
    std::vector<Root> roots;  // sorted by descending real part
    int order = 0;            // Chebyshev order used
    int dropped = 0;          // candidates whose refinement failed
};

// Chebyshev collocation of the solution-operator generator on [-tau_max, 0],
// eigenvalues of the n(N+1) companion form, Newton refinement of the `count`
// rightmost candidates on c(s) = 0 using c'/c = tr(M^{-1} M').
RootSet rightmost_roots(const LinearDDE& dde, int count = 20, int order = 32);

// Real part of the rightmost refined root.  Starts at order 32 and doubles
// (up to 128) until two consecutive orders agree within 1e-6.  When given,
// order_used receives the order the value settled at.
double lambda_max(const LinearDDE& dde, int* order_used = nullptr);

struct SweepResult {
    std::vector<double> gammas;
    std::vector<double> lambdas;
    double gamma_sup = std::numeric_limits<double>::quiet_NaN();
    double gamma_opt = std::numeric_limits<double>::quiet_NaN();
    double lambda_max_min = std::numeric_limits<double>::quiet_NaN();
    int order_used = 0;
    bool stable_interval_found = false;
};

// lambda_max of the closed loop for each gamma on the grid.  The OpenMP
// variant distributes grid points over a worker pool and aggregates by index,
// so results are identical to the serial reference.
std::vector<double> lambda_grid_serial(const DelaySystem& sys, StaticGain::Kind kind,
                                       const std::vector<double>& gammas);
std::vector<double> lambda_grid_parallel(const DelaySystem& sys, StaticGain::Kind kind,
                                         const std::vector<double>& gammas, int workers);

// Full sweep: grid evaluation, bisection for the stability boundary
// gamma_sup (gamma tolerance 1e-3) and golden-section refinement of the decay
// optimum gamma_opt (tolerance 1e-3).
SweepResult sweep(const DelaySystem& sys, StaticGain::Kind kind, double gamma_lo, double gamma_hi,
                  int points, int workers = 0);
SweepResult sweep_serial(const DelaySystem& sys, StaticGain::Kind kind, double gamma_lo,
                         double gamma_hi, int points);

}  // namespace delayctl::spectrum
