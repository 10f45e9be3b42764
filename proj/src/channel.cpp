// channel.cpp: Kraus, dilation and coefficient realizations of T_psi

#include "qbd/channel.hpp"

#include "qbd/errors.hpp"

#include <cmath>

namespace qbd {

namespace {

void require_dim(const Channel& ch, const Matrix& x, const char* who) {
    if (x.rows() != ch.dim() || x.cols() != ch.dim())
        throw ShapeMismatch(std::string(who) + ": operator dimension does not match truncation");
}

}  // namespace

Channel kraus_set(const ModelParameters& model, const QubitState& psi, const Truncation& trunc) {
    const int dim = trunc.dim;
    if (model.n_max() < dim) throw PreconditionViolated("model sequences must reach index N");
    const auto ops = basis_operators(model, dim);
    const Matrix sa = ops.s.adjoint();
    const double lambda = psi.lambda();
    const double z2 = std::norm(psi.zeta());

    Channel ch{model, psi, trunc, {}};
    if (lambda > 0.0) {
        const cplx c = I_UNIT * psi.zeta() * std::sqrt((1.0 - lambda) / lambda);
        ch.kraus.push_back({lambda, sa * ops.a * ops.s + c * sa * ops.b, 1});
        ch.kraus.push_back({lambda, ops.b * ops.s - c * ops.a, 2});
    }
    const double w = (1.0 - lambda) * (1.0 - z2);
    if (lambda < 1.0 && w > 0.0 && std::abs(std::abs(psi.zeta()) - 1.0) > 1e-12) {
        ch.kraus.push_back({w, sa * ops.b, 3});
        ch.kraus.push_back({w, ops.a, 4});
    }
    return ch;
}

// ----- Application -----

std::vector<UnitTerm> unit_image(const ModelParameters& model, const QubitState& psi, int n, int m) {
    if (n < 0 || m < 0 || std::max(n, m) + 1 > model.n_max())
        throw IndexOutOfRange("unit_image: index beyond model sequences");
    const auto& a = model.alpha;
    const auto& b = model.beta;
    const double l = psi.lambda();
    const cplx nu = psi.nu();
    const cplx nub = std::conj(nu);

    std::vector<UnitTerm> out;
    out.reserve(7);
    out.push_back({n, m, l * a[n + 1] * a[m + 1] + (1.0 - l) * a[n] * a[m]});
    out.push_back({n + 1, m + 1, (1.0 - l) * b[n + 1] * b[m + 1]});
    out.push_back({n + 1, m, a[m + 1] * b[n + 1] * nub});
    out.push_back({n, m + 1, a[n + 1] * b[m + 1] * nu});
    if (n >= 1 && m >= 1) {
        out.push_back({n - 1, m - 1, l * b[n] * b[m]});
        out.push_back({n - 1, m, -b[n] * a[m] * nu});
        out.push_back({n, m - 1, -a[n] * b[m] * nub});
    } else if (n == 0 && m >= 1) {
        out.push_back({0, m - 1, -a[0] * b[m] * nub});
    } else if (n >= 1 && m == 0) {
        out.push_back({n - 1, 0, -b[n] * a[0] * nu});
    }
    return out;
}

Matrix apply_heisenberg(const Channel& ch, const Matrix& x, ApplyMode mode) {
    require_dim(ch, x, "apply_heisenberg");
    const int dim = ch.dim();
    switch (mode) {
        case ApplyMode::kraus: {
            Matrix out = Matrix::Zero(dim, dim);
            for (const auto& k : ch.kraus) out.noalias() += k.weight * (k.op.adjoint() * x * k.op);
            return out;
        }
        case ApplyMode::dilation: {
            const Matrix u = dilation_unitary(ch.model, dim);
            const Matrix lifted = tensor_qubit(x, Eigen::Matrix2cd::Identity());
            return conditional_expectation_psi(u.adjoint() * lifted * u, ch.psi);
        }
        case ApplyMode::coefficient: {
            Matrix out = Matrix::Zero(dim, dim);
            for (int n = 0; n < dim; ++n)
                for (int m = 0; m < dim; ++m) {
                    const cplx v = x(n, m);
                    if (v == cplx{0.0, 0.0}) continue;
                    for (const auto& t : unit_image(ch.model, ch.psi, n, m))
                        if (t.row < dim && t.col < dim) out(t.row, t.col) += t.coef * v;
                }
            return out;
        }
    }
    return x;
}

Matrix apply_schrodinger(const Channel& ch, const Matrix& rho) {
    require_dim(ch, rho, "apply_schrodinger");
    Matrix out = Matrix::Zero(ch.dim(), ch.dim());
    for (const auto& k : ch.kraus) out.noalias() += k.weight * (k.op * rho * k.op.adjoint());
    return out;
}

double boundary_leakage(const Channel& ch) {
    const Matrix one = Matrix::Identity(ch.dim(), ch.dim());
    return max_abs(apply_heisenberg(ch, one) - one);
}

// ----- Symmetries -----

RotatedChannel conjugate_rotation(const Channel& ch, cplx theta) {
    const QubitState rotated = rotate_state(ch.psi, theta);
    Matrix u = Matrix::Zero(ch.dim(), ch.dim());
    cplx phase{1.0, 0.0};
    for (int n = 0; n < ch.dim(); ++n) {
        u(n, n) = phase;
        phase *= theta;
    }
    return {kraus_set(ch.model, rotated, ch.trunc), u};
}

double covariance_residual(const Channel& ch, cplx theta, const Matrix& x) {
    const auto rot = conjugate_rotation(ch, theta);
    const Matrix& u = rot.u_theta;
    const Matrix lhs = apply_heisenberg(rot.channel, x);
    const Matrix rhs = u.adjoint() * apply_heisenberg(ch, u * x * u.adjoint()) * u;
    return max_abs_corner(lhs - rhs, ch.trunc.last_interior());
}

Matrix apply_time_reversed(const Channel& ch, const Matrix& x) {
    require_dim(ch, x, "apply_time_reversed");
    const Matrix u = dilation_unitary(ch.model, ch.dim());
    const Matrix lifted = tensor_qubit(x, Eigen::Matrix2cd::Identity());
    return conditional_expectation_psi(u * lifted * u.adjoint(), ch.psi);
}

// ----- Locality -----

SandwichResult locality_sandwich_check(const Channel& ch, int m, int n) {
    const int dim = ch.dim();
    if (m < 1 || m > n || n > dim - 3) throw IndexOutOfRange("locality_sandwich_check: need 1 <= m <= n <= N-3");
    const Matrix tp = apply_heisenberg(ch, interval_projection(m, n, dim));
    const Matrix inner = m + 1 <= n - 1 ? interval_projection(m + 1, n - 1, dim) : Matrix::Zero(dim, dim);
    const Matrix outer = interval_projection(m - 1, n + 1, dim);
    SandwichResult r;
    r.lower_margin = min_eigenvalue_hermitian(tp - inner);
    r.upper_margin = min_eigenvalue_hermitian(outer - tp);
    r.lower_ok = r.lower_margin >= -1e-10;
    r.upper_ok = r.upper_margin >= -1e-10;
    return r;
}

Matrix choi_matrix(const Channel& ch) {
    const int dim = ch.dim();
    Matrix c = Matrix::Zero(dim * dim, dim * dim);
    for (int m = 0; m < dim; ++m)
        for (int n = 0; n < dim; ++n) c.block(m * dim, n * dim, dim, dim) = apply_schrodinger(ch, matrix_unit(m, n, dim));
    return c;
}

}  // namespace qbd
