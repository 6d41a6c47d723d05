#pragma once

#include "delayctl/consensus.hpp"
#include "delayctl/delay_system.hpp"

namespace delayctl::reference {

// Pair of coupled oscillators (4 states, all eigenvalues on the imaginary
// axis) driven through one direct channel and one channel delayed by pi/2.
// This is the workhorse example used across the tests and the verification
// suite; its gains admit the closed forms below.
DelaySystem oscillator_pair();

// Hand-derived closed forms of the two static gains for oscillator_pair(),
// used as independent oracles against the computed design path.
Matrix oscillator_pair_tpf_gain(double gamma);
Matrix oscillator_pair_tppf_gain(double gamma);

// Six-agent digraph whose Laplacian spectrum is {0, 1, 1, 2, 2, 3}.
Matrix six_agent_adjacency();

}  // namespace delayctl::reference
