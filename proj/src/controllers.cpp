#include "delayctl/controllers.hpp"

#include <algorithm>
#include <cmath>

#include "delayctl/errors.hpp"

namespace delayctl {

StaticGain tpf_gain(const DelaySystem& sys, const ParametricGain& g) {
    (void)sys;
    return StaticGain{StaticGain::Kind::TPF, g.F, g.gamma, g};
}

StaticGain tppf_gain(const DelaySystem& sys, const ParametricGain& g) {
    const double tau = total_delay(sys);
    const Matrix K =
        g.F * linalg::expm(sys.A() + g.B * g.F, tau) * linalg::expm(-sys.A(), tau);
    return StaticGain{StaticGain::Kind::TPPF, K, g.gamma, g};
}

KernelCache::KernelCache(Matrix A, Matrix B, double shift)
    : A_(std::move(A)), B_(std::move(B)), shift_(shift) {}

Matrix KernelCache::at(double sigma) const {
    // quantize to ~2^-40 so identical offsets across steps share one entry
    const long long key = llround(sigma * 1099511627776.0);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    Matrix value = linalg::expm(A_, static_cast<double>(key) / 1099511627776.0 + shift_) * B_;
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.emplace(key, std::move(value)).first->second;
}

QuadResult integrate_kernel_signal(const KernelCache& kernel, double lo, double hi,
                                   const InputSignal& u, double t, double quad_step,
                                   bool allow_tail) {
    const int n = static_cast<int>(kernel.at(lo).rows());
    const int m = u.dim();
    QuadResult out{Vector::Zero(n), Matrix::Zero(n, m)};
    if (hi <= lo + 1e-14) return out;
    if (!(quad_step > 0)) throw ValidationError("integrate_kernel_signal: quad_step must be positive");

    const double live = u.live_end();
    const double tail = t - live;  // span past the live end, if any
    if (tail > 1e-12 * (1 + std::abs(t)) && !allow_tail)
        throw HistoryError("distributed term: input history ends before t");
    if (t - hi < u.t_min() - 1e-9 * (1 + std::abs(t)))
        throw HistoryError("distributed term: input history does not reach back to t - window");

    // piece edges: window ends, u breakpoints, the live-end seam
    std::vector<double> edges{lo, hi};
    std::vector<double> bps;
    u.collect_breakpoints(t - hi, t - lo, bps);
    for (double tb : bps) edges.push_back(t - tb);
    if (tail > 1e-12 && tail > lo && tail < hi) edges.push_back(tail);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                edges.end());

    // quadratic model of u on (live, t]: u(s) = c_t(theta) u(t) + known(theta)
    const double delta = std::max(tail, 0.0);
    Vector u_live = Vector::Zero(m), u_prev = Vector::Zero(m);
    if (delta > 1e-12) {
        u_live = u.eval(live, Side::Above);
        const double earlier = std::max(live - delta, u.t_min());
        u_prev = u.eval(earlier, Side::Above);
    }
    auto tail_value = [&](double time, Vector& known_part, double& coeff_part) {
        const double theta = (time - live) / delta;
        coeff_part = 0.5 * (theta + theta * theta);
        known_part = (1 - theta * theta) * u_live + 0.5 * (theta * theta - theta) * u_prev;
    };

    for (size_t e = 0; e + 1 < edges.size(); ++e) {
        const double a = edges[e];
        const double b = edges[e + 1];
        const int parts = std::max(1, static_cast<int>(std::ceil((b - a) / quad_step - 1e-9)));
        for (int p = 0; p < parts; ++p) {
            const double pa = a + (b - a) * p / parts;
            const double pb = a + (b - a) * (p + 1) / parts;
            const double mid = 0.5 * (pa + pb);
            const double w = (pb - pa) / 6.0;
            const Matrix Ka = kernel.at(pa);
            const Matrix Km = kernel.at(mid);
            const Matrix Kb = kernel.at(pb);
            // node times: t-pa (upper), t-mid, t-pb (lower)
            struct Node {
                double time;
                Side side;
                const Matrix* K;
                double weight;
            } nodes[3] = {{t - pa, Side::Below, &Ka, w},
                          {t - mid, Side::Above, &Km, 4 * w},
                          {t - pb, Side::Above, &Kb, w}};
            for (const Node& nd : nodes) {
                if (nd.time > live + 1e-12) {
                    Vector knownu;
                    double c;
                    tail_value(nd.time, knownu, c);
                    out.known += nd.weight * (*nd.K * knownu);
                    out.coeff += (nd.weight * c) * (*nd.K);
                } else {
                    out.known += nd.weight * (*nd.K * u.eval(nd.time, nd.side));
                }
            }
        }
    }
    return out;
}

Vector predictor_state_z(const DelaySystem& sys, const Vector& x_now, const InputSignal& u,
                         double t, double quad_step) {
    if (x_now.size() != sys.state_dim()) throw DimensionError("predictor_state_z: state dimension");
    Vector z = x_now;
    for (const InputChannel& ch : sys.channels()) {
        if (ch.tau <= 0) continue;
        KernelCache kernel(sys.A(), ch.B, -ch.tau);
        z += integrate_kernel_signal(kernel, 0.0, ch.tau, u, t, quad_step, false).known;
    }
    return z;
}

Vector predictor_state_z(const DelaySystem& sys, const Vector& x_now, const History& u, double t,
                         double quad_step) {
    return predictor_state_z(sys, x_now, InputSignal(u), t, quad_step);
}

Vector predictor_state_y_recursive(const DelaySystem& sys, const Vector& x_now,
                                   const InputSignal& u, double t, double quad_step) {
    if (x_now.size() != sys.state_dim()) throw DimensionError("predictor_state_y_recursive: state dimension");
    const auto& chs = sys.channels();
    const int p = static_cast<int>(chs.size());

    // v_p = e^{A tau_p} x + int; v_i = e^{A tau_i} v_{i+1} + int with the
    // exponent shifted by the delays of the channels already absorbed
    Vector v = linalg::expm(sys.A(), chs[p - 1].tau) * x_now;
    double shift_accum = 0.0;  // sum of tau_j for j > i
    {
        KernelCache kernel(sys.A(), chs[p - 1].B, 0.0);
        if (chs[p - 1].tau > 0)
            v += integrate_kernel_signal(kernel, 0.0, chs[p - 1].tau, u, t, quad_step, false).known;
    }
    shift_accum = chs[p - 1].tau;
    for (int i = p - 2; i >= 0; --i) {
        v = (linalg::expm(sys.A(), chs[i].tau) * v).eval();
        if (chs[i].tau > 0) {
            KernelCache kernel(sys.A(), chs[i].B, shift_accum);
            v += integrate_kernel_signal(kernel, 0.0, chs[i].tau, u, t, quad_step, false).known;
        }
        shift_accum += chs[i].tau;
    }
    return linalg::expm(-sys.A(), total_delay(sys)) * v;
}

Vector predictor_state_y_recursive(const DelaySystem& sys, const Vector& x_now, const History& u,
                                   double t, double quad_step) {
    return predictor_state_y_recursive(sys, x_now, InputSignal(u), t, quad_step);
}

HistoryController::HistoryController(Kind kind, const DelaySystem& sys, const ParametricGain& g,
                                     double quad_step)
    : kind_(kind), sys_(sys), F_(g.F), quad_step_(quad_step) {
    if (!(quad_step_ > 0)) throw ValidationError("HistoryController: quad_step must be positive");
    total_tau_ = total_delay(sys_);
    if (kind_ == Kind::PPF) {
        G_ = g.F * linalg::expm(sys_.A() + g.B * g.F, total_tau_) *
             linalg::expm(-sys_.A(), total_tau_);
        required_span_ = total_tau_;
    } else {
        G_ = g.F;
        required_span_ = sys_.max_delay();
    }
    for (const InputChannel& ch : sys_.channels())
        kernels_.push_back(std::make_shared<KernelCache>(sys_.A(), ch.B, -ch.tau));
}

Vector HistoryController::solve_control(double t, const Vector& x_now, const InputSignal& u,
                                        bool allow_tail) const {
    if (x_now.size() != sys_.state_dim()) throw DimensionError("HistoryController: state dimension");
    const int n = sys_.state_dim();
    const int m = sys_.input_dim();
    Vector known = Vector::Zero(n);
    Matrix coeff = Matrix::Zero(n, m);
    const auto& chs = sys_.channels();
    for (size_t i = 0; i < chs.size(); ++i) {
        // PPF correction integrates over [tau_i, tau]; the reduced state over [0, tau_i]
        const double lo = (kind_ == Kind::PPF) ? chs[i].tau : 0.0;
        const double hi = (kind_ == Kind::PPF) ? total_tau_ : chs[i].tau;
        if (hi <= lo + 1e-14) continue;
        QuadResult q = integrate_kernel_signal(*kernels_[i], lo, hi, u, t, quad_step_, allow_tail);
        known += q.known;
        coeff += q.coeff;
    }
    const double sign = (kind_ == Kind::PPF) ? -1.0 : 1.0;  // u = G(x - phi) vs u = F(x + integral)
    const Matrix lhs = Matrix::Identity(m, m) - sign * G_ * coeff;
    const Vector rhs = G_ * (x_now + sign * known);
    if (!allow_tail || coeff.isZero(0.0)) return rhs;
    Eigen::PartialPivLU<Matrix> lu(lhs);
    Vector out = lu.solve(rhs);
    if (!out.allFinite())
        throw NumericError("HistoryController: implicit endpoint system is singular");
    return out;
}

Vector HistoryController::control(double t, const Vector& x_now, const InputSignal& u) const {
    return solve_control(t, x_now, u, false);
}

Vector HistoryController::control_stepping(double t, const Vector& x_now,
                                           const InputSignal& u) const {
    return solve_control(t, x_now, u, true);
}

Vector ppf_control(const HistoryController& hc, const Vector& x_now, const History& u, double t) {
    if (hc.kind() != HistoryController::Kind::PPF)
        throw ValidationError("ppf_control: controller is not a PPF law");
    return hc.control(t, x_now, InputSignal(u));
}

Vector model_reduction_control(const HistoryController& hc, const Vector& x_now, const History& u,
                               double t) {
    if (hc.kind() != HistoryController::Kind::ModelReduction)
        throw ValidationError("model_reduction_control: controller is not a model-reduction law");
    return hc.control(t, x_now, InputSignal(u));
}

}  // namespace delayctl
