#pragma once

#include <random>

#include "delayctl/delay_system.hpp"

namespace delayctl::testing {

// Random plant whose state matrix has its whole spectrum on the imaginary
// axis: block-diagonal 2x2 rotations and zero blocks conjugated by a random
// well-conditioned similarity, with a random input matrix re-drawn until
// (A, B) is controllable.  Dense random matrices essentially never satisfy
// the imaginary-axis requirement, hence the explicit construction.
struct ImaginaryAxisSystem {
    Matrix A;
    Matrix B;
};

ImaginaryAxisSystem random_imaginary_axis_system(std::mt19937& rng, int n, int m);

}  // namespace delayctl::testing
