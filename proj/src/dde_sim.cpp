#include "delayctl/dde_sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "delayctl/errors.hpp"

namespace delayctl {

LinearDDE make_linear_dde(Matrix A0, std::vector<DelayedTerm> terms) {
    linalg::require_square(A0, "LinearDDE");
    linalg::require_finite(A0, "LinearDDE");
    std::map<double, Matrix> merged;
    for (DelayedTerm& term : terms) {
        if (term.A.rows() != A0.rows() || term.A.cols() != A0.cols())
            throw DimensionError("LinearDDE: delayed block dimension mismatch");
        if (!std::isfinite(term.tau) || term.tau < 0)
            throw ValidationError("LinearDDE: delays must be finite and non-negative");
        if (term.tau == 0.0) {
            A0 += term.A;
            continue;
        }
        auto [it, inserted] = merged.emplace(term.tau, term.A);
        if (!inserted) it->second += term.A;
    }
    LinearDDE dde{std::move(A0), {}};
    for (auto& [tau, A] : merged)
        if (!A.isZero(0.0)) dde.delayed.push_back({std::move(A), tau});
    return dde;
}

LinearDDE assemble_closed_loop(const DelaySystem& sys, const Matrix& K) {
    if (K.rows() != sys.input_dim() || K.cols() != sys.state_dim())
        throw DimensionError("assemble_closed_loop: gain must be m x n");
    std::vector<DelayedTerm> terms;
    terms.reserve(sys.channels().size());
    for (const InputChannel& ch : sys.channels()) terms.push_back({ch.B * K, ch.tau});
    return make_linear_dde(sys.A(), std::move(terms));
}

namespace {

void validate_step(const LinearDDE& dde, double T, double h) {
    if (!(h > 0) || !(T > 0)) throw ValidationError("simulate: T and h must be positive");
    if (!dde.delayed.empty() && h > dde.min_delay() / 4.0 + 1e-12)
        throw ValidationError("simulate: step must satisfy h <= tau_min / 4 (smallest delay " +
                              std::to_string(dde.min_delay()) + ")");
}

// Hermite lookup across {init history for t <= 0, accumulated samples after}
class SolutionRecord {
  public:
    SolutionRecord(const History& init, double h) : init_(init), h_(h) {}

    void push(const Vector& x, const Vector& dx) {
        xs_.push_back(x);
        ds_.push_back(dx);
    }
    void set_last_derivative(const Vector& dx) { ds_.back() = dx; }
    const Vector& state(size_t k) const { return xs_[k]; }
    size_t size() const { return xs_.size(); }

    Vector at(double t) const {
        if (t <= 0.0) return init_.eval(t);
        const double pos = t / h_;
        size_t k = static_cast<size_t>(std::clamp(std::floor(pos + 1e-12), 0.0,
                                                  static_cast<double>(xs_.size() - 2)));
        const double s = std::clamp(pos - static_cast<double>(k), 0.0, 1.0);
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * xs_[k] + (s3 - 2 * s2 + s) * h_ * ds_[k] +
               (-2 * s3 + 3 * s2) * xs_[k + 1] + (s3 - s2) * h_ * ds_[k + 1];
    }

  private:
    const History& init_;
    double h_;
    std::vector<Vector> xs_, ds_;
};

}  // namespace

Trajectory simulate(const LinearDDE& dde, const History& init, double T, double h) {
    validate_step(dde, T, h);
    if (init.dim() != dde.dim()) throw DimensionError("simulate: init history dimension mismatch");
    const double tau_max = dde.max_delay();
    if (init.t_min() > -tau_max + 1e-9 || init.t_max() < -1e-9)
        throw HistoryError("simulate: init history must span [-tau_max, 0]");

    const long long steps = std::llround(T / h);
    if (steps < 1) throw ValidationError("simulate: horizon shorter than one step");

    SolutionRecord rec(init, h);
    auto f = [&](double t, const Vector& x) {
        Vector dx = dde.A0 * x;
        for (const DelayedTerm& term : dde.delayed) dx += term.A * rec.at(t - term.tau);
        return dx;
    };

    Trajectory traj;
    traj.step = h;
    Vector x = init.eval(0.0);
    rec.push(x, Vector::Zero(dde.dim()));
    for (long long k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * h;
        const Vector k1 = f(t, x);
        rec.set_last_derivative(k1);
        traj.times.push_back(t);
        traj.states.push_back(x);
        traj.derivatives.push_back(k1);

        const Vector k2 = f(t + h / 2, x + (h / 2) * k1);
        const Vector k3 = f(t + h / 2, x + (h / 2) * k2);
        const Vector k4 = f(t + h, x + h * k3);
        x = x + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
        rec.push(x, Vector::Zero(dde.dim()));
    }
    const double tend = static_cast<double>(steps) * h;
    const Vector dend = f(tend, x);
    rec.set_last_derivative(dend);
    traj.times.push_back(tend);
    traj.states.push_back(x);
    traj.derivatives.push_back(dend);
    return traj;
}

Trajectory simulate_dynamic(const DelaySystem& sys, const HistoryController& hc,
                            const History& init_state, const History& init_input, double T,
                            double h) {
    if (!(h > 0) || !(T > 0)) throw ValidationError("simulate_dynamic: T and h must be positive");
    double tau_min_pos = std::numeric_limits<double>::infinity();
    for (const InputChannel& ch : sys.channels())
        if (ch.tau > 0) tau_min_pos = std::min(tau_min_pos, ch.tau);
    if (std::isfinite(tau_min_pos) && h > tau_min_pos / 4.0 + 1e-12)
        throw ValidationError("simulate_dynamic: step must satisfy h <= tau_min / 4");
    if (init_state.dim() != sys.state_dim())
        throw DimensionError("simulate_dynamic: state history dimension mismatch");
    if (init_input.dim() != sys.input_dim())
        throw DimensionError("simulate_dynamic: input history dimension mismatch");
    if (init_input.t_min() > -hc.required_span() + 1e-9 || init_input.t_max() < -1e-9)
        throw HistoryError("simulate_dynamic: input history must span [-" +
                           std::to_string(hc.required_span()) + ", 0]");

    const long long steps = std::llround(T / h);
    if (steps < 1) throw ValidationError("simulate_dynamic: horizon shorter than one step");
    const int m = sys.input_dim();

    InputSignal u_signal(&init_input, 0.0, h, m);
    std::vector<Vector> us;
    us.reserve(static_cast<size_t>(steps) + 1);

    Trajectory traj;
    traj.step = h;
    Vector x = init_state.eval(0.0);

    // the init history covers t = 0, so the first control is a direct evaluation
    us.push_back(hc.control(0.0, x, InputSignal(init_input)));
    u_signal.push_sample(us[0]);

    // u over the current step for RK4 stage lookups
    auto make_step_input = [&](double t, const Vector& u0, const Vector& d0, const Vector& u1,
                               const Vector& d1) {
        return [&, t, u0, d0, u1, d1](double tv) -> Vector {
            if (tv >= t - 1e-13) {
                const double s = std::clamp((tv - t) / h, 0.0, 1.0);
                const double s2 = s * s, s3 = s2 * s;
                return (2 * s3 - 3 * s2 + 1) * u0 + (s3 - 2 * s2 + s) * h * d0 +
                       (-2 * s3 + 3 * s2) * u1 + (s3 - s2) * h * d1;
            }
            return u_signal.eval(tv, Side::Above);
        };
    };

    auto rk4 = [&](double t, const Vector& x0, const std::function<Vector(double)>& u_at) {
        auto f = [&](double tt, const Vector& xx) {
            Vector dx = sys.A() * xx;
            for (const InputChannel& ch : sys.channels()) dx += ch.B * u_at(tt - ch.tau);
            return dx;
        };
        const Vector k1 = f(t, x0);
        const Vector k2 = f(t + h / 2, x0 + (h / 2) * k1);
        const Vector k3 = f(t + h / 2, x0 + (h / 2) * k2);
        const Vector k4 = f(t + h, x0 + h * k3);
        return std::make_pair((x0 + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)).eval(), k1);
    };

    for (long long k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * h;
        const Vector& uk = us.back();
        const Vector ukm = (k >= 1) ? us[k - 1] : us[0];
        const Vector ukm2 = (k >= 2) ? us[k - 2] : ukm;

        // predictor: quadratic extrapolation of the control over the step
        const Vector d_ex = (3.0 * uk - 4.0 * ukm + ukm2) / (2 * h);
        const Vector c_ex = (uk - 2.0 * ukm + ukm2) / 2.0;
        auto u_pred = [&](double tv) -> Vector {
            if (tv >= t - 1e-13) {
                const double s = (tv - t) / h;
                return uk + s * (2 * h) * 0.5 * d_ex + s * s * c_ex;
            }
            return u_signal.eval(tv, Side::Above);
        };
        auto [xp, k1] = rk4(t, x, u_pred);
        traj.times.push_back(t);
        traj.states.push_back(x);
        traj.derivatives.push_back(k1);
        traj.inputs.push_back(uk);

        Vector up = hc.control_stepping(t + h, xp, u_signal);
        Vector xn = xp;
        for (int pass = 0; pass < 2; ++pass) {
            const Vector d0 = (k >= 1) ? ((up - ukm) / (2 * h)).eval() : ((up - uk) / h).eval();
            const Vector d1 =
                (k >= 1) ? ((3.0 * up - 4.0 * uk + ukm) / (2 * h)).eval() : ((up - uk) / h).eval();
            auto u_corr = make_step_input(t, uk, d0, up, d1);
            xn = rk4(t, x, u_corr).first;
            up = hc.control_stepping(t + h, xn, u_signal);
        }
        x = xn;
        us.push_back(up);
        u_signal.push_sample(up);
    }
    const double tend = static_cast<double>(steps) * h;
    traj.times.push_back(tend);
    traj.states.push_back(x);
    traj.inputs.push_back(us.back());
    {
        Vector dx = sys.A() * x;
        for (const InputChannel& ch : sys.channels())
            dx += ch.B * u_signal.eval(tend - ch.tau, Side::Above);
        traj.derivatives.push_back(dx);
    }
    return traj;
}

Trajectory simulate_ids(const Matrix& F, const Matrix& A, const Matrix& B, double tau,
                        const History& init, double T, double h) {
    if (!(tau > 0)) throw ValidationError("simulate_ids: tau must be positive");
    if (!(h > 0) || !(T > 0)) throw ValidationError("simulate_ids: T and h must be positive");
    const long long K = std::llround(tau / h);
    if (K < 2 || std::abs(static_cast<double>(K) * h - tau) > 1e-9 * tau)
        throw ValidationError("simulate_ids: h must divide tau (grid-aligned quadrature)");
    const int m = static_cast<int>(F.rows());
    if (init.dim() != m) throw DimensionError("simulate_ids: init history dimension mismatch");
    if (init.t_min() > -tau + 1e-9) throw HistoryError("simulate_ids: init must span [-tau, 0]");

    const Matrix Acl = A + B * F;
    std::vector<Matrix> w(static_cast<size_t>(K) + 1);  // w_j = F e^{Acl j h} B
    for (long long j = 0; j <= K; ++j) w[j] = F * linalg::expm(Acl, static_cast<double>(j) * h) * B;

    const Matrix stepmat = Matrix::Identity(m, m) + (h / 2.0) * (F * B);
    Eigen::PartialPivLU<Matrix> lu(stepmat);
    {
        const Vector probe = lu.solve(Vector::Ones(m));
        if (!probe.allFinite() || std::abs(lu.determinant()) < 1e-300)
            throw NumericError("simulate_ids: step matrix I + (h/2) F B is singular; "
                               "use a smaller step");
    }

    std::vector<Vector> rho;
    for (long long j = -K; j <= 0; ++j) rho.push_back(init.eval(static_cast<double>(j) * h));

    const long long steps = std::llround(T / h);
    Trajectory traj;
    traj.step = h;
    traj.times.push_back(0.0);
    traj.states.push_back(rho.back());
    for (long long s = 1; s <= steps; ++s) {
        Vector acc = 0.5 * (w[K] * rho[rho.size() - K]);
        for (long long j = 1; j < K; ++j) acc += w[j] * rho[rho.size() - j];
        const Vector next = lu.solve((-h) * acc);
        rho.push_back(next);
        traj.times.push_back(static_cast<double>(s) * h);
        traj.states.push_back(next);
    }
    // slope samples for completeness; the equation itself is integral, not differential
    traj.derivatives.resize(traj.states.size(), Vector::Zero(m));
    for (size_t i = 1; i + 1 < traj.states.size(); ++i)
        traj.derivatives[i] = (traj.states[i + 1] - traj.states[i - 1]) / (2 * h);
    return traj;
}

double decay_rate(const Trajectory& traj, double t0, double t1) {
    double st = 0, sy = 0, stt = 0, sty = 0;
    long long count = 0;
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        if (t < t0 || t > t1) continue;
        const double norm = traj.states[i].norm();
        if (norm < 1e-300)
            throw NumericError("decay_rate: state norm underflow inside the fit window");
        const double y = std::log(norm);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
        ++count;
    }
    if (count < 2) throw ValidationError("decay_rate: fewer than two samples in the window");
    const double denom = static_cast<double>(count) * stt - st * st;
    if (denom <= 0) throw NumericError("decay_rate: degenerate time window");
    return (static_cast<double>(count) * sty - st * sy) / denom;
}

}  // namespace delayctl
