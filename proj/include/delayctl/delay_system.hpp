#pragma once

#include <vector>

#include "delayctl/linalg.hpp"

namespace delayctl {

using linalg::Complex;
using linalg::Matrix;
using linalg::Vector;

struct InputChannel {
    Matrix B;    // n x m
    double tau;  // seconds, >= 0
};

// Plant with state matrix A and p delayed input channels, delays sorted
// non-decreasing.  The constructor validates dimensions, finiteness and
// ordering; file loaders are responsible for sorting (see io.hpp).
class DelaySystem {
  public:
    DelaySystem(Matrix A, std::vector<InputChannel> channels);

    const Matrix& A() const { return A_; }
    const std::vector<InputChannel>& channels() const { return channels_; }
    int state_dim() const { return static_cast<int>(A_.rows()); }
    int input_dim() const { return static_cast<int>(channels_.front().B.cols()); }
    int channel_count() const { return static_cast<int>(channels_.size()); }
    double max_delay() const { return channels_.back().tau; }

  private:
    Matrix A_;
    std::vector<InputChannel> channels_;
};

struct AssumptionReport {
    Matrix reduced_B;
    double total_tau = 0.0;
    bool stabilizable = false;
    bool controllable = false;
    bool spectrum_on_axis = false;
    std::vector<Complex> eigenvalues_of_A;
    double max_real_part = 0.0;
};

// B = sum_i e^{-A tau_i} B_i
Matrix reduced_input_matrix(const DelaySystem& sys);

// sum of all channel delays (not the maximum)
double total_delay(const DelaySystem& sys);

// Controllability of (A, B), imaginary-axis spectrum test with tolerance
// 1e-8 * (1 + ||A||), and a PBH stabilizability scan over eigenvalues with
// Re(lambda) >= -1e-8.
AssumptionReport check_assumptions(const DelaySystem& sys);

}  // namespace delayctl
