// oracle.hpp: Independent reference implementations used by the tests

#pragma once

#include "qbd/channel.hpp"

#include <Eigen/Eigenvalues>

#include <random>
#include <vector>

namespace oracle {

using qbd::cplx;
using qbd::Matrix;

// Sparse vector on H (x) C^2: entries (level, qubit slot, amplitude), slot 0 is e1.
struct Entry {
    int level;
    int slot;
    cplx amp;
};

// Image of e_n (x) e_slot under the dilation, read off its block columns without truncation.
inline std::vector<Entry> dilate(const qbd::ModelParameters& m, int n, int slot) {
    const cplx i{0.0, 1.0};
    if (slot == 0) return {{n, 0, m.alpha[n + 1]}, {n + 1, 1, i * m.beta[n + 1]}};
    std::vector<Entry> out{{n, 1, m.alpha[n]}};
    if (n >= 1) out.push_back({n - 1, 0, i * m.beta[n]});
    return out;
}

// 2x2 density of the qubit state, written directly from (lambda, zeta).
inline Eigen::Matrix2cd density(double lambda, cplx zeta) {
    const double c = std::sqrt(lambda * (1.0 - lambda));
    Eigen::Matrix2cd r;
    r << lambda, std::conj(zeta) * c, zeta * c, 1.0 - lambda;
    return r;
}

// T(x)_{ij} = sum_{a,b} rho_{ba} <(x (x) 1) u(e_j (x) e_b), u(e_i (x) e_a)>, x zero beyond its corner.
inline Matrix heisenberg(const qbd::ModelParameters& m, double lambda, cplx zeta, const Matrix& x) {
    const int dim = static_cast<int>(x.rows());
    const auto rho = density(lambda, zeta);
    auto at = [&](int r, int c) { return (r < dim && c < dim) ? x(r, c) : cplx{0.0, 0.0}; };
    Matrix out = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            cplx sum{0.0, 0.0};
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    if (rho(b, a) == cplx{0.0, 0.0}) continue;
                    cplx inner{0.0, 0.0};
                    for (const auto& v : dilate(m, j, b))
                        for (const auto& w : dilate(m, i, a))
                            if (v.slot == w.slot) inner += std::conj(w.amp) * at(w.level, v.level) * v.amp;
                    sum += rho(b, a) * inner;
                }
            out(i, j) = sum;
        }
    return out;
}

// Gaussian complex matrix supported on indices <= last.
inline Matrix random_supported(std::mt19937_64& rng, int dim, int last) {
    std::normal_distribution<double> g;
    Matrix x = Matrix::Zero(dim, dim);
    for (int r = 0; r <= last; ++r)
        for (int c = 0; c <= last; ++c) x(r, c) = cplx{g(rng), g(rng)};
    return x;
}

inline Matrix random_density(std::mt19937_64& rng, int dim, int last) {
    const Matrix g = random_supported(rng, dim, last);
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

// T_*(rho) = Tr_qubit[u (rho (x) sigma) u*] with sigma the qubit density; exact for rho of any support.
inline Matrix predual(const qbd::ModelParameters& m, double lambda, cplx zeta, const Matrix& rho) {
    const int dim = static_cast<int>(rho.rows());
    const int big = dim + 1;
    Matrix u = Matrix::Zero(2 * big, 2 * big);
    for (int n = 0; n < dim; ++n)
        for (int slot = 0; slot < 2; ++slot)
            for (const auto& e : dilate(m, n, slot)) u(e.slot * big + e.level, slot * big + n) += e.amp;
    const auto sigma = density(lambda, zeta);
    Matrix lifted = Matrix::Zero(2 * big, 2 * big);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) lifted.block(a * big, b * big, dim, dim) = sigma(a, b) * rho;
    const Matrix full = u * lifted * u.adjoint();
    return (full.topLeftCorner(big, big) + full.bottomRightCorner(big, big)).topLeftCorner(dim, dim);
}

// Trace norm of T_*(rho) - rho on the corner of indices <= last.
inline double invariance_residual(const qbd::ModelParameters& m, double lambda, cplx zeta, const Matrix& rho, int last) {
    const Matrix d = (predual(m, lambda, zeta, rho) - rho).topLeftCorner(last + 1, last + 1);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

inline double max_abs(const Matrix& x) { return x.cwiseAbs().maxCoeff(); }

inline double max_abs_corner(const Matrix& x, int last) {
    return x.topLeftCorner(last + 1, last + 1).cwiseAbs().maxCoeff();
}

}  // namespace oracle
