#include "delayctl/reference_models.hpp"

#include <cmath>

namespace delayctl::reference {

DelaySystem oscillator_pair() {
    Matrix A(4, 4);
    A << 0, 1, 0, 0,
        -1, 0, 1, 0,
         0, 0, 0, 1,
         0, 0, -1, 0;
    Matrix B1(4, 1), B2(4, 1);
    B1 << 0, -1, 0, 0;
    B2 << 0, 0, 0, 1;
    return DelaySystem(A, {{B1, 0.0}, {B2, M_PI / 2.0}});
}

Matrix oscillator_pair_tpf_gain(double g) {
    const double pi = M_PI;
    Matrix F(1, 4);
    F << 4 * g * g * g,
        -std::pow(g, 4) + 4 * g * g,
        4 * g + std::pow(g, 4) - 2 * g * g * g - 4 * g * g - 0.25 * pi * std::pow(g, 4) +
            pi * g * g,
        -0.5 * std::pow(g, 4) + 4 * g * g * g - 4 * g * g - g * g * g * pi;
    return F;
}

Matrix oscillator_pair_tppf_gain(double g) {
    const double pi = M_PI;
    const double g2 = g * g, g3 = g2 * g, g4 = g3 * g, g5 = g4 * g;
    Matrix K(1, 4);
    K << g2 * (4 * g * pi - 3 * g3 * pi + 2 * g4 + 8 * g2 - 16),
        2 * g * (-4 * g * pi - 5 * g3 * pi + 3 * g4 + 18 * g2 + 8),
        16 + 6 * g4 - 36 * g3 + 40 * g2 - 16 * g - 6 * g5 - 4 * g * pi + 10 * pi * g4 -
            11 * g3 * pi + 8 * pi * g2,
        g * (8 * g3 + 2 * g2 - 16 * g + 16 + 2 * g5 + 4 * pi * g2 - 4 * g * pi - 3 * pi * g4);
    return (0.25 * g * std::exp(-0.5 * g * pi)) * K;
}

Matrix six_agent_adjacency() {
    Matrix alpha = Matrix::Zero(6, 6);
    alpha(0, 1) = 2;  // agent 1 listens to agent 2
    alpha(1, 0) = 1;
    alpha(2, 4) = 2;
    alpha(3, 2) = 1;
    alpha(4, 0) = 2;
    alpha(5, 4) = 1;
    return alpha;
}

}  // namespace delayctl::reference
