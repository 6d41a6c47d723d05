#include "delayctl/spectrum.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "delayctl/errors.hpp"

namespace delayctl::spectrum {

namespace {

ComplexMatrix char_matrix(const LinearDDE& dde, Complex s) {
    const int n = dde.dim();
    ComplexMatrix M = s * ComplexMatrix::Identity(n, n) - dde.A0.cast<Complex>();
    for (const DelayedTerm& term : dde.delayed)
        M -= std::exp(-term.tau * s) * term.A.cast<Complex>();
    return M;
}

ComplexMatrix char_matrix_derivative(const LinearDDE& dde, Complex s) {
    const int n = dde.dim();
    ComplexMatrix M = ComplexMatrix::Identity(n, n);
    for (const DelayedTerm& term : dde.delayed)
        M += (term.tau * std::exp(-term.tau * s)) * term.A.cast<Complex>();
    return M;
}

}  // namespace

Complex char_value(const LinearDDE& dde, Complex s) {
    return char_matrix(dde, s).partialPivLu().determinant();
}

double char_scale(const LinearDDE& dde, Complex s) {
    // Hadamard-style bound built from row-norm upper estimates; unlike the
    // row norms of sI - A0 - sum A_k e^{-tau_k s} themselves it cannot
    // collapse at a root
    const int n = dde.dim();
    double scale = 1.0;
    for (int i = 0; i < n; ++i) {
        double row = std::abs(s) + dde.A0.row(i).norm();
        for (const DelayedTerm& term : dde.delayed)
            row += std::abs(std::exp(-term.tau * s)) * term.A.row(i).norm();
        scale *= std::max(row, 1e-30);
    }
    return std::max(scale, 1e-300);
}

namespace {

struct Collocation {
    std::vector<double> theta;  // nodes on [-tau_max, 0], theta[0] = 0
    Matrix D;                   // differentiation matrix on the nodes
    std::vector<double> bary;   // barycentric weights
};

Collocation chebyshev_collocation(int N, double tau_max) {
    Collocation c;
    c.theta.resize(N + 1);
    std::vector<double> x(N + 1);
    for (int k = 0; k <= N; ++k) {
        x[k] = std::cos(k * M_PI / N);
        c.theta[k] = (x[k] - 1.0) * tau_max / 2.0;
    }
    Matrix D(N + 1, N + 1);
    auto cw = [N](int k) { return ((k == 0 || k == N) ? 2.0 : 1.0) * ((k % 2) ? -1.0 : 1.0); };
    for (int i = 0; i <= N; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j <= N; ++j) {
            if (i == j) continue;
            D(i, j) = (cw(i) / cw(j)) / (x[i] - x[j]);
            rowsum += D(i, j);
        }
        D(i, i) = -rowsum;
    }
    c.D = D * (2.0 / tau_max);  // chain rule from [-1,1] to [-tau_max, 0]

    c.bary.assign(N + 1, 1.0);
    for (int j = 0; j <= N; ++j)
        for (int k = 0; k <= N; ++k)
            if (k != j) c.bary[j] /= (c.theta[j] - c.theta[k]);
    return c;
}

std::vector<double> interpolation_row(const Collocation& c, double theta_query) {
    const int N = static_cast<int>(c.theta.size()) - 1;
    std::vector<double> row(N + 1, 0.0);
    for (int j = 0; j <= N; ++j)
        if (std::abs(theta_query - c.theta[j]) < 1e-14) {
            row[j] = 1.0;
            return row;
        }
    double denom = 0.0;
    for (int j = 0; j <= N; ++j) {
        row[j] = c.bary[j] / (theta_query - c.theta[j]);
        denom += row[j];
    }
    for (double& v : row) v /= denom;
    return row;
}

// One Newton refinement on c(s) = 0.  Returns true when converged.
bool refine_root(const LinearDDE& dde, Complex& s) {
    for (int it = 0; it < 60; ++it) {
        const ComplexMatrix M = char_matrix(dde, s);
        Eigen::PartialPivLU<ComplexMatrix> lu(M);
        const Complex det = lu.determinant();
        if (std::abs(det) <= 1e-13 * char_scale(dde, s)) return true;  // already at a root

        Complex trace(0, 0);
        const ComplexMatrix Mp = char_matrix_derivative(dde, s);
        const ComplexMatrix X = lu.solve(Mp);
        for (Eigen::Index i = 0; i < X.rows(); ++i) trace += X(i, i);

        Complex step;
        if (std::isfinite(trace.real()) && std::isfinite(trace.imag()) &&
            std::abs(trace) > 1e-300) {
            step = 1.0 / trace;
        } else {
            // near-singular M: central differences of the determinant
            const double delta = 1e-7 * (1.0 + std::abs(s));
            const Complex dc = (char_value(dde, s + delta) - char_value(dde, s - delta)) /
                               (2.0 * delta);
            if (std::abs(dc) < 1e-300) return false;
            step = det / dc;
        }
        s -= step;
        if (!(std::isfinite(s.real()) && std::isfinite(s.imag()))) return false;
        if (std::abs(step) <= 1e-12 * (1.0 + std::abs(s))) return true;
    }
    return false;
}

}  // namespace

RootSet rightmost_roots(const LinearDDE& dde, int count, int order) {
    if (count < 1) throw ValidationError("rightmost_roots: count must be at least 1");
    if (order < 8) throw ValidationError("rightmost_roots: discretization order must be >= 8");
    const int n = dde.dim();

    RootSet out;
    out.order = order;

    if (dde.delayed.empty()) {
        std::vector<Complex> evs = linalg::eigenvalues(dde.A0);
        std::sort(evs.begin(), evs.end(),
                  [](const Complex& a, const Complex& b) { return a.real() > b.real(); });
        evs.resize(std::min<size_t>(evs.size(), static_cast<size_t>(count)));
        for (const Complex& s : evs)
            out.roots.push_back({s, std::abs(char_value(dde, s)) / char_scale(dde, s)});
        return out;
    }

    const Collocation coll = chebyshev_collocation(order, dde.max_delay());
    const int N = order;
    Matrix big = Matrix::Zero(static_cast<Eigen::Index>(n) * (N + 1),
                              static_cast<Eigen::Index>(n) * (N + 1));
    for (int i = 1; i <= N; ++i)
        for (int j = 0; j <= N; ++j)
            big.block(static_cast<Eigen::Index>(i) * n, static_cast<Eigen::Index>(j) * n, n, n) =
                coll.D(i, j) * Matrix::Identity(n, n);
    // splicing row: the generator applies the right-hand side at theta = 0
    big.block(0, 0, n, n) = dde.A0;
    for (const DelayedTerm& term : dde.delayed) {
        const std::vector<double> row = interpolation_row(coll, -term.tau);
        for (int j = 0; j <= N; ++j)
            big.block(0, static_cast<Eigen::Index>(j) * n, n, n) += row[j] * term.A;
    }

    Eigen::EigenSolver<Matrix> solver(big, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericError("rightmost_roots: eigenvalue iteration on the collocation matrix failed");
    std::vector<Complex> candidates;
    candidates.reserve(static_cast<size_t>(solver.eigenvalues().size()));
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        candidates.push_back(solver.eigenvalues()(i));
    std::sort(candidates.begin(), candidates.end(),
              [](const Complex& a, const Complex& b) { return a.real() > b.real(); });
    candidates.resize(std::min<size_t>(candidates.size(), static_cast<size_t>(count)));

    std::vector<Root> refined;
    for (Complex s : candidates) {
        if (!refine_root(dde, s)) {
            ++out.dropped;
            continue;
        }
        const double residual = std::abs(char_value(dde, s)) / char_scale(dde, s);
        if (residual > 1e-8) {
            ++out.dropped;
            continue;
        }
        const bool duplicate =
            std::any_of(refined.begin(), refined.end(), [&](const Root& r) {
                return std::abs(r.s - s) <= 1e-7 * (1.0 + std::abs(s));
            });
        if (!duplicate) refined.push_back({s, residual});
    }
    if (refined.empty())
        throw NumericError("rightmost_roots: every candidate was dropped; increase the "
                           "discretization order");
    std::sort(refined.begin(), refined.end(),
              [](const Root& a, const Root& b) { return a.s.real() > b.s.real(); });
    out.roots = std::move(refined);
    return out;
}

double lambda_max(const LinearDDE& dde, int* order_used) {
    if (dde.delayed.empty()) {
        if (order_used) *order_used = 0;
        return linalg::spectral_abscissa(dde.A0);
    }
    double prev = std::numeric_limits<double>::quiet_NaN();
    bool have_prev = false;
    for (int order = 32; order <= 128; order *= 2) {
        double value;
        try {
            value = rightmost_roots(dde, 20, order).roots.front().s.real();
        } catch (const NumericError&) {
            have_prev = false;
            continue;
        }
        if (have_prev && std::abs(value - prev) <= 1e-6) {
            if (order_used) *order_used = order;
            return value;
        }
        prev = value;
        have_prev = true;
    }
    throw NumericError("lambda_max: discretization did not self-validate up to order 128");
}

namespace {

Matrix closed_loop_gain(const DelaySystem& sys, StaticGain::Kind kind, double gamma) {
    const Matrix B = reduced_input_matrix(sys);
    const ParametricGain g = gain(sys.A(), B, gamma);
    if (kind == StaticGain::Kind::TPF) return tpf_gain(sys, g).K;
    return tppf_gain(sys, g).K;
}

double lambda_at(const DelaySystem& sys, StaticGain::Kind kind, double gamma,
                 int* order_used = nullptr) {
    return lambda_max(assemble_closed_loop(sys, closed_loop_gain(sys, kind, gamma)), order_used);
}

}  // namespace

std::vector<double> lambda_grid_serial(const DelaySystem& sys, StaticGain::Kind kind,
                                       const std::vector<double>& gammas) {
    std::vector<double> out(gammas.size());
    for (size_t i = 0; i < gammas.size(); ++i) out[i] = lambda_at(sys, kind, gammas[i]);
    return out;
}

namespace {

std::vector<double> lambda_grid_tracked(const DelaySystem& sys, StaticGain::Kind kind,
                                        const std::vector<double>& gammas, int workers,
                                        int& max_order) {
    std::vector<double> out(gammas.size());
    std::vector<int> orders(gammas.size(), 0);
#ifdef _OPENMP
    std::exception_ptr first_error = nullptr;
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(gammas.size()); ++i) {
        try {
            out[static_cast<size_t>(i)] =
                lambda_at(sys, kind, gammas[static_cast<size_t>(i)], &orders[static_cast<size_t>(i)]);
        } catch (...) {
#pragma omp critical
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
#else
    (void)workers;
    for (size_t i = 0; i < gammas.size(); ++i) out[i] = lambda_at(sys, kind, gammas[i], &orders[i]);
#endif
    for (int o : orders) max_order = std::max(max_order, o);
    return out;
}

}  // namespace

std::vector<double> lambda_grid_parallel(const DelaySystem& sys, StaticGain::Kind kind,
                                         const std::vector<double>& gammas, int workers) {
    std::vector<double> out(gammas.size());
#ifdef _OPENMP
    std::exception_ptr first_error = nullptr;
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(gammas.size()); ++i) {
        try {
            out[static_cast<size_t>(i)] = lambda_at(sys, kind, gammas[static_cast<size_t>(i)]);
        } catch (...) {
#pragma omp critical
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
#else
    (void)workers;
    out = lambda_grid_serial(sys, kind, gammas);
#endif
    return out;
}

namespace {

SweepResult finish_sweep(const DelaySystem& sys, StaticGain::Kind kind, SweepResult result) {
    const auto& gs = result.gammas;
    const auto& ls = result.lambdas;
    const size_t count = gs.size();

    const bool any_negative = std::any_of(ls.begin(), ls.end(), [](double v) { return v < 0; });
    result.stable_interval_found = any_negative;
    if (!any_negative) return result;  // empty stability interval in this range

    // stability boundary: first grid transition from negative to non-negative
    for (size_t i = 0; i + 1 < count; ++i) {
        if (ls[i] < 0 && ls[i + 1] >= 0) {
            double lo = gs[i], hi = gs[i + 1];
            while (hi - lo > 1e-3) {
                const double mid = 0.5 * (lo + hi);
                (lambda_at(sys, kind, mid) < 0 ? lo : hi) = mid;
            }
            result.gamma_sup = 0.5 * (lo + hi);
            break;
        }
    }

    // decay optimum: golden-section refinement around the grid minimum
    size_t imin = 0;
    for (size_t i = 1; i < count; ++i)
        if (ls[i] < ls[imin]) imin = i;
    double a = gs[imin > 0 ? imin - 1 : 0];
    double b = gs[imin + 1 < count ? imin + 1 : count - 1];
    double best_g = gs[imin];
    double best_l = ls[imin];
    if (b > a) {
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - phi * (b - a);
        double x2 = a + phi * (b - a);
        double f1 = lambda_at(sys, kind, x1);
        double f2 = lambda_at(sys, kind, x2);
        while (b - a > 1e-3) {
            if (f1 <= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - phi * (b - a);
                f1 = lambda_at(sys, kind, x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + phi * (b - a);
                f2 = lambda_at(sys, kind, x2);
            }
            if (f1 < best_l) best_l = f1, best_g = x1;
            if (f2 < best_l) best_l = f2, best_g = x2;
        }
    }
    result.gamma_opt = best_g;
    result.lambda_max_min = best_l;
    return result;
}

std::vector<double> gamma_grid(double lo, double hi, int points) {
    if (!(lo > 0) || !(hi > lo)) throw ValidationError("sweep: need 0 < gamma_lo < gamma_hi");
    if (points < 10) throw ValidationError("sweep: need at least 10 grid points");
    std::vector<double> gs(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i)
        gs[static_cast<size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    return gs;
}

}  // namespace

SweepResult sweep(const DelaySystem& sys, StaticGain::Kind kind, double gamma_lo, double gamma_hi,
                  int points, int workers) {
    SweepResult result;
    result.gammas = gamma_grid(gamma_lo, gamma_hi, points);
    int max_order = 0;
    result.lambdas = lambda_grid_tracked(sys, kind, result.gammas, workers, max_order);
    result.order_used = max_order;
    return finish_sweep(sys, kind, std::move(result));
}

SweepResult sweep_serial(const DelaySystem& sys, StaticGain::Kind kind, double gamma_lo,
                         double gamma_hi, int points) {
    SweepResult result;
    result.gammas = gamma_grid(gamma_lo, gamma_hi, points);
    int max_order = 0;
    for (size_t i = 0; i < result.gammas.size(); ++i) {
        int order = 0;
        result.lambdas.push_back(lambda_at(sys, kind, result.gammas[i], &order));
        max_order = std::max(max_order, order);
    }
    result.order_used = max_order;
    return finish_sweep(sys, kind, std::move(result));
}

}  // namespace delayctl::spectrum
