// classical.hpp: Classical birth-and-death chain on the diagonal

#pragma once

#include "qbd/channel.hpp"

#include <string>

namespace qbd {

// Row-stochastic (distribution-evolving) tridiagonal matrix; row N-1 loses its upward rate.
struct ClassicalChain {
    int dim = 0;
    double lambda = 0.0;
    RealMatrix transition;
};

ClassicalChain classical_transition_matrix(const Channel& ch);

struct ClassicalStationary {
    bool exists = false;
    RealVector pi;           // present when exists
    double residual = 0.0;   // l1 norm of pi P - pi over indices <= N-3
    double ratio = 0.0;      // geometric ratio lambda / (1 - lambda)
    double renormalization = 1.0;  // factor applied after truncating the geometric tail
    std::string diagnosis;   // set when !exists
};

ClassicalStationary classical_stationary(const ClassicalChain& chain);

// Left fixed vector of the chain with the lost upward rate folded into the last self-loop.
RealVector classical_left_fixed_vector(const ClassicalChain& chain);

struct DiagonalInvariance {
    bool invariant = false;
    double max_off_diagonal = 0.0;
};

DiagonalInvariance diagonal_invariance_check(const Channel& ch);

}  // namespace qbd
