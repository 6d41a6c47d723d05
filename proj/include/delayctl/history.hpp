#pragma once

#include <functional>
#include <vector>

#include "delayctl/linalg.hpp"

namespace delayctl {

using linalg::Matrix;
using linalg::Vector;

// Piecewise cubic Hermite record of a vector signal: value and derivative at
// every breakpoint, C^1 across breakpoints by construction.  Evaluation is
// restricted to the covered span.
class History {
  public:
    History(std::vector<double> times, std::vector<Vector> values, std::vector<Vector> derivatives);

    static History constant(const Vector& value, double t0, double t1);

    // Samples f (and its derivative df) on a uniform grid of width <= step.
    static History sample(const std::function<Vector(double)>& f,
                          const std::function<Vector(double)>& df, double t0, double t1,
                          double step);

    double t_min() const { return times_.front(); }
    double t_max() const { return times_.back(); }
    int dim() const { return static_cast<int>(values_.front().size()); }
    const std::vector<double>& breakpoints() const { return times_; }

    Vector eval(double t) const;
    Vector derivative(double t) const;

    // Exact integral of the piecewise cubic over [a, b] within the span.
    Vector integrate(double a, double b) const;

  private:
    std::vector<double> times_;
    std::vector<Vector> values_;
    std::vector<Vector> derivs_;

    size_t segment_index(double t) const;
};

// Sampled trajectory produced by the simulators: uniform step, state and
// derivative samples, input samples when a controller was attached.
struct Trajectory {
    double step = 0.0;
    std::vector<double> times;
    std::vector<Vector> states;
    std::vector<Vector> derivatives;
    std::vector<Vector> inputs;  // empty when no controller

    History state_history() const;
    const Vector& final_state() const { return states.back(); }
};

enum class Side { Below, Above };

// Piecewise-smooth input signal: an optional pre-history followed by a run of
// uniform samples.  The two parts may disagree at the seam (the controller
// switches on there), so evaluation is side-aware.  Derivatives on the
// sampled part come from second-order finite differences.
class InputSignal {
  public:
    explicit InputSignal(const History& pre);
    InputSignal(const History* pre, double run_start, double run_step, int dim);

    void push_sample(const Vector& u);

    int dim() const { return dim_; }
    double t_min() const;
    // Last instant the signal is defined at.
    double live_end() const;

    Vector eval(double t, Side side = Side::Above) const;

    // Appends every breakpoint strictly inside (a, b) to out.
    void collect_breakpoints(double a, double b, std::vector<double>& out) const;

  private:
    const History* pre_ = nullptr;
    double run_start_ = 0.0;
    double run_step_ = 0.0;
    std::vector<Vector> samples_;
    int dim_ = 0;

    Vector sample_derivative(size_t k) const;
    Vector eval_run(double t) const;
};

}  // namespace delayctl
