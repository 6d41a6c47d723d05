// Timing comparison of the serial reference gamma-grid kernel against the
// OpenMP version, on the bundled example system.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "delayctl/reference_models.hpp"
#include "delayctl/spectrum.hpp"

using namespace delayctl;

namespace {

double time_ms(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const int points = argc > 1 ? std::atoi(argv[1]) : 24;
    const DelaySystem sys = reference::oscillator_pair();

    std::vector<double> gammas(points);
    for (int i = 0; i < points; ++i) gammas[i] = 0.05 + (1.0 - 0.05) * i / (points - 1);

    std::vector<double> serial, parallel;
    const double t_serial = time_ms([&] {
        serial = spectrum::lambda_grid_serial(sys, StaticGain::Kind::TPPF, gammas);
    });

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    const double t_parallel = time_ms([&] {
        parallel = spectrum::lambda_grid_parallel(sys, StaticGain::Kind::TPPF, gammas, threads);
    });

    double max_diff = 0.0;
    for (int i = 0; i < points; ++i) max_diff = std::max(max_diff, std::abs(serial[i] - parallel[i]));

    std::printf("gamma grid points : %d\n", points);
    std::printf("serial reference  : %9.1f ms\n", t_serial);
    std::printf("openmp (%d threads): %9.1f ms\n", threads, t_parallel);
    std::printf("speedup           : %9.2fx\n", t_serial / t_parallel);
    std::printf("max |serial - parallel| = %.3e\n", max_diff);
    return max_diff == 0.0 ? 0 : 1;
}
