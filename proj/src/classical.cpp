// classical.cpp: Classical birth-and-death chain extraction and analysis

#include "qbd/classical.hpp"

#include "qbd/errors.hpp"

#include <cmath>

namespace qbd {

ClassicalChain classical_transition_matrix(const Channel& ch) {
    const int dim = ch.dim();
    const double l = ch.psi.lambda();
    const auto& a = ch.model.alpha;
    const auto& b = ch.model.beta;
    ClassicalChain chain{dim, l, RealMatrix::Zero(dim, dim)};
    for (int n = 0; n < dim; ++n) {
        chain.transition(n, n) = (1.0 - l) * a[n] * a[n] + l * a[n + 1] * a[n + 1];
        if (n + 1 < dim) chain.transition(n, n + 1) = l * b[n + 1] * b[n + 1];
        if (n >= 1) chain.transition(n, n - 1) = (1.0 - l) * b[n] * b[n];
    }
    return chain;
}

ClassicalStationary classical_stationary(const ClassicalChain& chain) {
    ClassicalStationary out;
    const double l = chain.lambda;
    if (l >= 0.5) {
        out.ratio = l < 1.0 ? l / (1.0 - l) : INFINITY;
        out.diagnosis = "geometric ratio >= 1";
        return out;
    }
    const double r = l / (1.0 - l);
    out.ratio = r;
    out.exists = true;
    out.pi = RealVector(chain.dim);
    double weight = (1.0 - 2.0 * l) / (1.0 - l);
    for (int n = 0; n < chain.dim; ++n) {
        out.pi(n) = weight;
        weight *= r;
    }
    out.renormalization = 1.0 / out.pi.sum();
    out.pi *= out.renormalization;
    const RealVector drift = chain.transition.transpose() * out.pi - out.pi;
    out.residual = drift.head(std::max(chain.dim - 2, 0)).lpNorm<1>();
    return out;
}

RealVector classical_left_fixed_vector(const ClassicalChain& chain) {
    const int dim = chain.dim;
    RealMatrix p = chain.transition;
    p(dim - 1, dim - 1) += 1.0 - p.row(dim - 1).sum();
    // Solve pi (P - 1) = 0 with the first equation replaced by sum(pi) = 1.
    RealMatrix system = (p - RealMatrix::Identity(dim, dim)).transpose();
    system.row(0).setOnes();
    RealVector rhs = RealVector::Zero(dim);
    rhs(0) = 1.0;
    return system.fullPivLu().solve(rhs);
}

DiagonalInvariance diagonal_invariance_check(const Channel& ch) {
    const int dim = ch.dim();
    DiagonalInvariance out;
    for (int n = 0; n <= dim - 2; ++n) {
        const Matrix t = apply_heisenberg(ch, matrix_unit(n, n, dim), ApplyMode::coefficient);
        out.max_off_diagonal = std::max(out.max_off_diagonal, max_abs(t - conditional_expectation_diag(t)));
    }
    out.invariant = out.max_off_diagonal <= 1e-14;
    return out;
}

}  // namespace qbd
