// channel.hpp: Transition operator T_psi, its predual and structural checks

#pragma once

#include "qbd/model.hpp"
#include "qbd/operators.hpp"

#include <vector>

namespace qbd {

struct KrausTerm {
    double weight = 0.0;
    Matrix op;
    int label = 0;  // 1..4, matching t1..t4
};

struct Channel {
    ModelParameters model;
    QubitState psi;
    Truncation trunc;
    std::vector<KrausTerm> kraus;

    int dim() const { return trunc.dim; }
};

// Weighted family {(lambda, t1), (lambda, t2), ((1-lambda)(1-|zeta|^2), t3), (same, t4)};
// zero-weight terms are omitted. Requires model sequences up to index N.
Channel kraus_set(const ModelParameters& model, const QubitState& psi, const Truncation& trunc);

// ----- Application -----

enum class ApplyMode { kraus, dilation, coefficient };

// One term of the action on a matrix unit: coef * e_{row,col}.
struct UnitTerm {
    int row;
    int col;
    cplx coef;
};

// T(e_{n,m}) on the untruncated space, expressed with the model sequences.
// Needs alpha, beta up to index max(n, m) + 1.
std::vector<UnitTerm> unit_image(const ModelParameters& model, const QubitState& psi, int n, int m);

Matrix apply_heisenberg(const Channel& ch, const Matrix& x, ApplyMode mode = ApplyMode::kraus);
Matrix apply_schrodinger(const Channel& ch, const Matrix& rho);

// Max-entry norm of T(1) - 1 over the full truncated matrix.
double boundary_leakage(const Channel& ch);

// ----- Symmetries -----

struct RotatedChannel {
    Channel channel;  // channel for rotate_state(psi, theta)
    Matrix u_theta;   // diag(1, theta, theta^2, ...)
};

// The rotated channel satisfies T_rot(x) = u* T(u x u*) u with u = u_theta.
RotatedChannel conjugate_rotation(const Channel& ch, cplx theta);

// Max-entry violation of the covariance identity on the interior for input x.
double covariance_residual(const Channel& ch, cplx theta, const Matrix& x);

// Time-reversed operator x -> P_psi(u (x (x) 1) u*) at truncation.
Matrix apply_time_reversed(const Channel& ch, const Matrix& x);

// ----- Locality -----

struct SandwichResult {
    bool lower_ok = false;
    bool upper_ok = false;
    double lower_margin = 0.0;  // min eigenvalue of T(p_[m,n]) - p_[m+1,n-1]
    double upper_margin = 0.0;  // min eigenvalue of p_[m-1,n+1] - T(p_[m,n])
};

SandwichResult locality_sandwich_check(const Channel& ch, int m, int n);

// Choi matrix sum e_{m,n} (x) T_*(e_{m,n}) built from the predual.
Matrix choi_matrix(const Channel& ch);

}  // namespace qbd
