#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "delayctl/delay_system.hpp"
#include "delayctl/history.hpp"
#include "delayctl/parametric_gain.hpp"

namespace delayctl {

struct StaticGain {
    enum class Kind { TPF, TPPF };
    Kind kind = Kind::TPF;
    Matrix K;  // m x n
    double gamma = 0.0;
    ParametricGain source;
};

// K = F
StaticGain tpf_gain(const DelaySystem& sys, const ParametricGain& g);

// K = F e^{(A+BF)tau} e^{-A tau} with tau the sum of all channel delays
StaticGain tppf_gain(const DelaySystem& sys, const ParametricGain& g);

// Memoized e^{A (sigma + shift)} B on a quantized sigma grid.  Thread-safe.
class KernelCache {
  public:
    KernelCache(Matrix A, Matrix B, double shift);
    Matrix at(double sigma) const;

  private:
    Matrix A_, B_;
    double shift_;
    mutable std::map<long long, Matrix> cache_;
    mutable std::mutex mutex_;
};

// integral ~= known + coeff * u(t) for the window sigma in [lo, hi] of
// \int kernel(sigma) u(t - sigma) dsigma.  Composite Simpson on pieces split
// at every breakpoint of u inside the window and capped at quad_step.  With
// allow_tail the sliver beyond the signal's live end is expressed through the
// unknown endpoint value u(t) (quadratic extrapolation); otherwise reaching
// past the live end is a HistoryError.
struct QuadResult {
    Vector known;
    Matrix coeff;
};
QuadResult integrate_kernel_signal(const KernelCache& kernel, double lo, double hi,
                                   const InputSignal& u, double t, double quad_step,
                                   bool allow_tail);

// z(t) = x(t) + sum_i \int_{t-tau_i}^{t} e^{A(t-tau_i-s)} B_i u(s) ds
Vector predictor_state_z(const DelaySystem& sys, const Vector& x_now, const InputSignal& u,
                         double t, double quad_step);
Vector predictor_state_z(const DelaySystem& sys, const Vector& x_now, const History& u, double t,
                         double quad_step);

// Same state through the recursive chain of per-channel transforms; equals
// predictor_state_z up to quadrature accuracy.
Vector predictor_state_y_recursive(const DelaySystem& sys, const Vector& x_now,
                                   const InputSignal& u, double t, double quad_step);
Vector predictor_state_y_recursive(const DelaySystem& sys, const Vector& x_now, const History& u,
                                   double t, double quad_step);

// History-dependent control laws.  PPF applies the pseudo-prediction gain to
// x(t) minus the distributed correction; ModelReduction feeds back the
// reduced state z(t).
class HistoryController {
  public:
    enum class Kind { PPF, ModelReduction };

    HistoryController(Kind kind, const DelaySystem& sys, const ParametricGain& g,
                      double quad_step);

    Kind kind() const { return kind_; }
    const DelaySystem& system() const { return sys_; }
    double quad_step() const { return quad_step_; }
    // span of input history the law needs: total delay for PPF, max delay for
    // model reduction
    double required_span() const { return required_span_; }
    // gain applied to the (corrected) state: F e^{(A+BF)tau} e^{-A tau} for
    // PPF, F for model reduction
    const Matrix& state_gain() const { return G_; }

    // Direct evaluation; the signal must cover [t - required_span, t].
    Vector control(double t, const Vector& x_now, const InputSignal& u) const;

    // Evaluation one step past the signal's live end; the endpoint value is
    // solved from the implicit m x m system.
    Vector control_stepping(double t, const Vector& x_now, const InputSignal& u) const;

  private:
    Kind kind_;
    DelaySystem sys_;
    Matrix F_;
    Matrix G_;
    double quad_step_;
    double total_tau_;
    double required_span_;
    std::vector<std::shared_ptr<KernelCache>> kernels_;  // e^{A(sigma - tau_i)} B_i

    Vector solve_control(double t, const Vector& x_now, const InputSignal& u,
                         bool allow_tail) const;
};

Vector ppf_control(const HistoryController& hc, const Vector& x_now, const History& u, double t);
Vector model_reduction_control(const HistoryController& hc, const Vector& x_now, const History& u,
                               double t);

}  // namespace delayctl
