// operators.hpp: Truncated operator toolbox: shift, diagonals, units, projections, dilation

#pragma once

#include "qbd/model.hpp"

#include <Eigen/Dense>

namespace qbd {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Truncation to the corner p_[0,N-1] B(H) p_[0,N-1]. Indices <= N-1-margin form the interior.
struct Truncation {
    int dim = 0;
    int interior_margin = 1;

    int last_interior() const { return dim - 1 - interior_margin; }
};

Truncation make_truncation(int dim, int interior_margin = 1);

// ----- Basis/projector helpers -----

struct BasisOperators {
    Matrix s;  // truncated shift, s e_n = e_{n+1} for n < N-1
    Matrix a;  // diag(alpha_0..alpha_{N-1})
    Matrix b;  // diag(beta_0..beta_{N-1})
};

BasisOperators basis_operators(const ModelParameters& model, int dim);

Matrix matrix_unit(int m, int n, int dim);
Matrix interval_projection(int m, int n, int dim);
Matrix complement(const Matrix& p);

// ----- Dilation and conditional expectations -----

// 2N x 2N block matrix [[s*as, i s*b], [i b s, a]] with blocks ordered (H (x) e1, H (x) e2).
Matrix dilation_unitary(const ModelParameters& model, int dim);

// rho11 X11 + rho21 X12 + rho12 X21 + rho22 X22 for a 2x2 block matrix X.
Matrix conditional_expectation_psi(const Matrix& blocks, const QubitState& psi);

// Keeps the diagonal, zeroes everything else.
Matrix conditional_expectation_diag(const Matrix& x);

// Block matrix x (x) y with the qubit factor outermost, matching the dilation layout.
Matrix tensor_qubit(const Matrix& x, const Eigen::Matrix2cd& y);

// ----- Numeric helpers -----

double max_abs(const Matrix& x);
// Max-entry norm over the leading (last+1) x (last+1) corner.
double max_abs_corner(const Matrix& x, int last);
Matrix corner(const Matrix& x, int last);
// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue_hermitian(const Matrix& x);
// Trace norm of the Hermitian part.
double trace_norm_hermitian(const Matrix& x);
// Entries outside [lo, hi] on both axes, in max-entry norm.
double max_abs_outside(const Matrix& x, int row_lo, int row_hi, int col_lo, int col_hi);

}  // namespace qbd
