#include "delayctl/history.hpp"

#include <algorithm>
#include <cmath>

#include "delayctl/errors.hpp"

namespace delayctl {

namespace {
constexpr double kEdgeSlack = 1e-9;

// Hermite basis on [0,1]
inline void hermite_basis(double s, double& h00, double& h10, double& h01, double& h11) {
    const double s2 = s * s;
    const double s3 = s2 * s;
    h00 = 2 * s3 - 3 * s2 + 1;
    h10 = s3 - 2 * s2 + s;
    h01 = -2 * s3 + 3 * s2;
    h11 = s3 - s2;
}
}  // namespace

History::History(std::vector<double> times, std::vector<Vector> values,
                 std::vector<Vector> derivatives)
    : times_(std::move(times)), values_(std::move(values)), derivs_(std::move(derivatives)) {
    if (times_.size() < 2 || values_.size() != times_.size() || derivs_.size() != times_.size())
        throw ValidationError("History: need matching times/values/derivatives, at least 2 nodes");
    for (size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1]))
            throw ValidationError("History: breakpoints must be strictly increasing");
    const Eigen::Index d = values_.front().size();
    for (size_t i = 0; i < values_.size(); ++i)
        if (values_[i].size() != d || derivs_[i].size() != d)
            throw DimensionError("History: inconsistent vector dimensions");
}

History History::constant(const Vector& value, double t0, double t1) {
    return History({t0, t1}, {value, value}, {Vector::Zero(value.size()), Vector::Zero(value.size())});
}

History History::sample(const std::function<Vector(double)>& f,
                        const std::function<Vector(double)>& df, double t0, double t1,
                        double step) {
    if (!(t1 > t0) || !(step > 0)) throw ValidationError("History::sample: bad span or step");
    const int n = std::max(1, static_cast<int>(std::ceil((t1 - t0) / step - 1e-12)));
    std::vector<double> ts;
    std::vector<Vector> vs, ds;
    for (int k = 0; k <= n; ++k) {
        const double t = (k == n) ? t1 : t0 + k * (t1 - t0) / n;
        ts.push_back(t);
        vs.push_back(f(t));
        ds.push_back(df(t));
    }
    return History(std::move(ts), std::move(vs), std::move(ds));
}

size_t History::segment_index(double t) const {
    if (t < times_.front() - kEdgeSlack * (1 + std::abs(times_.front())) ||
        t > times_.back() + kEdgeSlack * (1 + std::abs(times_.back())))
        throw HistoryError("History: evaluation at t=" + std::to_string(t) +
                           " outside span [" + std::to_string(times_.front()) + ", " +
                           std::to_string(times_.back()) + "]");
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    size_t k = (it == times_.begin()) ? 0 : static_cast<size_t>(it - times_.begin()) - 1;
    return std::min(k, times_.size() - 2);
}

Vector History::eval(double t) const {
    const size_t k = segment_index(t);
    const double w = times_[k + 1] - times_[k];
    const double s = std::clamp((t - times_[k]) / w, 0.0, 1.0);
    double h00, h10, h01, h11;
    hermite_basis(s, h00, h10, h01, h11);
    return h00 * values_[k] + h10 * w * derivs_[k] + h01 * values_[k + 1] + h11 * w * derivs_[k + 1];
}

Vector History::derivative(double t) const {
    const size_t k = segment_index(t);
    const double w = times_[k + 1] - times_[k];
    const double s = std::clamp((t - times_[k]) / w, 0.0, 1.0);
    const double g00 = (6 * s * s - 6 * s) / w;
    const double g10 = 3 * s * s - 4 * s + 1;
    const double g01 = (6 * s - 6 * s * s) / w;
    const double g11 = 3 * s * s - 2 * s;
    return g00 * values_[k] + g10 * derivs_[k] + g01 * values_[k + 1] + g11 * derivs_[k + 1];
}

Vector History::integrate(double a, double b) const {
    if (b < a) return -integrate(b, a);
    Vector acc = Vector::Zero(dim());
    if (b == a) return acc;
    const size_t ka = segment_index(a);
    const size_t kb = segment_index(b);
    for (size_t k = ka; k <= kb; ++k) {
        const double lo = std::max(a, times_[k]);
        const double hi = std::min(b, times_[k + 1]);
        if (hi <= lo) continue;
        const double w = times_[k + 1] - times_[k];
        const double s0 = (lo - times_[k]) / w;
        const double s1 = (hi - times_[k]) / w;
        // antiderivatives of the Hermite basis
        auto H00 = [](double s) { return 0.5 * s * s * s * s - s * s * s + s; };
        auto H10 = [](double s) { return 0.25 * s * s * s * s - (2.0 / 3.0) * s * s * s + 0.5 * s * s; };
        auto H01 = [](double s) { return -0.5 * s * s * s * s + s * s * s; };
        auto H11 = [](double s) { return 0.25 * s * s * s * s - s * s * s / 3.0; };
        acc += w * ((H00(s1) - H00(s0)) * values_[k] + (H10(s1) - H10(s0)) * w * derivs_[k] +
                    (H01(s1) - H01(s0)) * values_[k + 1] + (H11(s1) - H11(s0)) * w * derivs_[k + 1]);
    }
    return acc;
}

History Trajectory::state_history() const {
    return History(times, states, derivatives);
}

InputSignal::InputSignal(const History& pre) : pre_(&pre), dim_(pre.dim()) {
    run_start_ = pre.t_max();
    run_step_ = 0.0;
}

InputSignal::InputSignal(const History* pre, double run_start, double run_step, int dim)
    : pre_(pre), run_start_(run_start), run_step_(run_step), dim_(dim) {
    if (pre_ && pre_->dim() != dim_) throw DimensionError("InputSignal: dimension mismatch");
    if (!(run_step_ > 0)) throw ValidationError("InputSignal: run step must be positive");
}

void InputSignal::push_sample(const Vector& u) {
    if (u.size() != dim_) throw DimensionError("InputSignal: sample dimension mismatch");
    samples_.push_back(u);
}

double InputSignal::t_min() const {
    return pre_ ? pre_->t_min() : run_start_;
}

double InputSignal::live_end() const {
    if (!samples_.empty()) return run_start_ + (static_cast<double>(samples_.size()) - 1) * run_step_;
    return pre_ ? pre_->t_max() : run_start_;
}

Vector InputSignal::sample_derivative(size_t k) const {
    const size_t K = samples_.size() - 1;
    const double h = run_step_;
    if (K == 0) return Vector::Zero(dim_);
    if (k > 0 && k < K) return (samples_[k + 1] - samples_[k - 1]) / (2 * h);
    if (k == 0)
        return K >= 2 ? ((-3.0 * samples_[0] + 4.0 * samples_[1] - samples_[2]) / (2 * h)).eval()
                      : ((samples_[1] - samples_[0]) / h).eval();
    return K >= 2 ? ((3.0 * samples_[K] - 4.0 * samples_[K - 1] + samples_[K - 2]) / (2 * h)).eval()
                  : ((samples_[K] - samples_[K - 1]) / h).eval();
}

Vector InputSignal::eval_run(double t) const {
    const size_t K = samples_.size() - 1;
    if (K == 0) return samples_[0];
    const double pos = (t - run_start_) / run_step_;
    size_t k = static_cast<size_t>(std::clamp(std::floor(pos + 1e-12), 0.0, static_cast<double>(K - 1)));
    const double s = std::clamp(pos - static_cast<double>(k), 0.0, 1.0);
    double h00, h10, h01, h11;
    hermite_basis(s, h00, h10, h01, h11);
    return h00 * samples_[k] + h10 * run_step_ * sample_derivative(k) + h01 * samples_[k + 1] +
           h11 * run_step_ * sample_derivative(k + 1);
}

Vector InputSignal::eval(double t, Side side) const {
    const double seam = run_start_;
    const bool in_run = !samples_.empty() &&
                        (t > seam + 1e-13 || (std::abs(t - seam) <= 1e-13 && side == Side::Above));
    if (in_run) {
        if (t > live_end() + 1e-9 * (1 + std::abs(t)))
            throw HistoryError("InputSignal: evaluation beyond live end");
        return eval_run(std::min(t, live_end()));
    }
    if (!pre_) {
        if (samples_.empty()) throw HistoryError("InputSignal: empty signal");
        return samples_.front();  // clamp below the run start
    }
    if (t > pre_->t_max() + 1e-9 * (1 + std::abs(t)))
        throw HistoryError("InputSignal: evaluation beyond covered span");
    return pre_->eval(std::min(t, pre_->t_max()));
}

void InputSignal::collect_breakpoints(double a, double b, std::vector<double>& out) const {
    if (pre_)
        for (double t : pre_->breakpoints())
            if (t > a && t < b) out.push_back(t);
    if (!samples_.empty()) {
        if (run_start_ > a && run_start_ < b) out.push_back(run_start_);
        for (size_t k = 1; k < samples_.size(); ++k) {
            const double t = run_start_ + static_cast<double>(k) * run_step_;
            if (t > a && t < b) out.push_back(t);
        }
    }
}

}  // namespace delayctl
