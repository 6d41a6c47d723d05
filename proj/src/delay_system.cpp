#include "delayctl/delay_system.hpp"

#include <cmath>

#include "delayctl/errors.hpp"

namespace delayctl {

DelaySystem::DelaySystem(Matrix A, std::vector<InputChannel> channels)
    : A_(std::move(A)), channels_(std::move(channels)) {
    linalg::require_square(A_, "DelaySystem");
    linalg::require_finite(A_, "DelaySystem");
    if (channels_.empty()) throw ValidationError("DelaySystem: at least one input channel required");

    const Eigen::Index n = A_.rows();
    const Eigen::Index m = channels_.front().B.cols();
    double prev = 0.0;
    for (size_t i = 0; i < channels_.size(); ++i) {
        const InputChannel& ch = channels_[i];
        linalg::require_finite(ch.B, "DelaySystem channel");
        if (ch.B.rows() != n || ch.B.cols() != m)
            throw DimensionError("DelaySystem: channel " + std::to_string(i) +
                                 " input matrix must be " + std::to_string(n) + "x" +
                                 std::to_string(m));
        if (!std::isfinite(ch.tau) || ch.tau < 0.0)
            throw ValidationError("DelaySystem: delays must be finite and non-negative");
        if (ch.tau < prev)
            throw ValidationError("DelaySystem: delays must be sorted non-decreasing");
        prev = ch.tau;
    }
}

Matrix reduced_input_matrix(const DelaySystem& sys) {
    Matrix B = Matrix::Zero(sys.state_dim(), sys.input_dim());
    for (const InputChannel& ch : sys.channels()) B += linalg::expm(-sys.A(), ch.tau) * ch.B;
    return B;
}

double total_delay(const DelaySystem& sys) {
    double total = 0.0;
    for (const InputChannel& ch : sys.channels()) total += ch.tau;
    return total;
}

AssumptionReport check_assumptions(const DelaySystem& sys) {
    AssumptionReport report;
    report.reduced_B = reduced_input_matrix(sys);
    report.total_tau = total_delay(sys);
    report.eigenvalues_of_A = linalg::eigenvalues(sys.A());

    double max_abs_re = 0.0;
    report.max_real_part = -std::numeric_limits<double>::infinity();
    for (const Complex& ev : report.eigenvalues_of_A) {
        max_abs_re = std::max(max_abs_re, std::abs(ev.real()));
        report.max_real_part = std::max(report.max_real_part, ev.real());
    }
    const double axis_tol = 1e-8 * (1.0 + sys.A().norm());
    report.spectrum_on_axis = max_abs_re <= axis_tol;

    const int n = sys.state_dim();
    report.controllable = linalg::controllability_rank(sys.A(), report.reduced_B) == n;

    // PBH test on every eigenvalue that is not strictly in the open left half
    // plane: rank [A - lambda I, B] must be n.
    report.stabilizable = true;
    const linalg::ComplexMatrix Ac = sys.A().cast<Complex>();
    const linalg::ComplexMatrix Bc = report.reduced_B.cast<Complex>();
    for (const Complex& ev : report.eigenvalues_of_A) {
        if (ev.real() < -1e-8) continue;
        linalg::ComplexMatrix pencil(n, n + report.reduced_B.cols());
        pencil.leftCols(n) = Ac - ev * linalg::ComplexMatrix::Identity(n, n);
        pencil.rightCols(report.reduced_B.cols()) = Bc;
        Eigen::JacobiSVD<linalg::ComplexMatrix> svd(pencil);
        const auto& sigma = svd.singularValues();
        const double tol = static_cast<double>(pencil.cols()) *
                           std::numeric_limits<double>::epsilon() * sigma(0) * 1e3;
        int rank = 0;
        for (Eigen::Index i = 0; i < sigma.size(); ++i)
            if (sigma(i) > tol) ++rank;
        if (rank < n) {
            report.stabilizable = false;
            break;
        }
    }
    return report;
}

}  // namespace delayctl
