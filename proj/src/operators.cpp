// operators.cpp: Truncated operator toolbox

#include "qbd/operators.hpp"

#include "qbd/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

namespace qbd {

Truncation make_truncation(int dim, int interior_margin) {
    if (dim < 4) throw PreconditionViolated("truncation dimension must be at least 4");
    if (interior_margin < 1) throw PreconditionViolated("interior margin must be at least 1");
    if (dim - 2 * interior_margin < 2) throw PreconditionViolated("interior margin too large for dimension");
    return Truncation{dim, interior_margin};
}

// ----- Basis/projector helpers -----

BasisOperators basis_operators(const ModelParameters& model, int dim) {
    if (dim < 1) throw PreconditionViolated("dimension must be positive");
    if (model.n_max() < dim - 1) throw PreconditionViolated("model sequences shorter than truncation");
    BasisOperators ops{Matrix::Zero(dim, dim), Matrix::Zero(dim, dim), Matrix::Zero(dim, dim)};
    for (int n = 0; n + 1 < dim; ++n) ops.s(n + 1, n) = 1.0;
    for (int n = 0; n < dim; ++n) {
        ops.a(n, n) = model.alpha[n];
        ops.b(n, n) = model.beta[n];
    }
    return ops;
}

Matrix matrix_unit(int m, int n, int dim) {
    if (m < 0 || n < 0 || m >= dim || n >= dim) throw IndexOutOfRange("matrix_unit: index out of range");
    Matrix e = Matrix::Zero(dim, dim);
    e(m, n) = 1.0;
    return e;
}

Matrix interval_projection(int m, int n, int dim) {
    if (m < 0 || m > n || n >= dim) throw IndexOutOfRange("interval_projection: index out of range");
    Matrix p = Matrix::Zero(dim, dim);
    for (int k = m; k <= n; ++k) p(k, k) = 1.0;
    return p;
}

Matrix complement(const Matrix& p) { return Matrix::Identity(p.rows(), p.cols()) - p; }

// ----- Dilation and conditional expectations -----

Matrix dilation_unitary(const ModelParameters& model, int dim) {
    const auto ops = basis_operators(model, dim);
    const Matrix sa = ops.s.adjoint();
    Matrix u = Matrix::Zero(2 * dim, 2 * dim);
    u.topLeftCorner(dim, dim) = sa * ops.a * ops.s;
    u.topRightCorner(dim, dim) = I_UNIT * sa * ops.b;
    u.bottomLeftCorner(dim, dim) = I_UNIT * ops.b * ops.s;
    u.bottomRightCorner(dim, dim) = ops.a;
    return u;
}

Matrix conditional_expectation_psi(const Matrix& blocks, const QubitState& psi) {
    if (blocks.rows() != blocks.cols() || blocks.rows() % 2 != 0)
        throw ShapeMismatch("conditional_expectation_psi: expected a square 2N x 2N matrix");
    const auto n = blocks.rows() / 2;
    const auto rho = density_matrix(psi);
    return rho.r11 * blocks.topLeftCorner(n, n) + rho.r21 * blocks.topRightCorner(n, n) +
           rho.r12 * blocks.bottomLeftCorner(n, n) + rho.r22 * blocks.bottomRightCorner(n, n);
}

Matrix conditional_expectation_diag(const Matrix& x) {
    Matrix out = Matrix::Zero(x.rows(), x.cols());
    out.diagonal() = x.diagonal();
    return out;
}

Matrix tensor_qubit(const Matrix& x, const Eigen::Matrix2cd& y) {
    const auto n = x.rows();
    Matrix out(2 * n, 2 * n);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block(i * n, j * n, n, n) = y(i, j) * x;
    return out;
}

// ----- Numeric helpers -----

double max_abs(const Matrix& x) { return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff(); }

double max_abs_corner(const Matrix& x, int last) {
    if (last < 0) return 0.0;
    return max_abs(x.topLeftCorner(last + 1, last + 1));
}

Matrix corner(const Matrix& x, int last) { return x.topLeftCorner(last + 1, last + 1); }

double min_eigenvalue_hermitian(const Matrix& x) {
    const Matrix h = 0.5 * (x + x.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double trace_norm_hermitian(const Matrix& x) {
    const Matrix h = 0.5 * (x + x.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

double max_abs_outside(const Matrix& x, int row_lo, int row_hi, int col_lo, int col_hi) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            const bool inside = i >= row_lo && i <= row_hi && j >= col_lo && j <= col_hi;
            if (!inside) worst = std::max(worst, std::abs(x(i, j)));
        }
    return worst;
}

}  // namespace qbd
