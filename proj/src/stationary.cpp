// stationary.cpp: Closed-form and numeric invariant states, explicit fixed points

#include "qbd/stationary.hpp"

#include "qbd/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>

namespace qbd {

std::string to_string(InvariantKind kind) {
    switch (kind) {
        case InvariantKind::closed_form_diagonal: return "closed_form_diagonal";
        case InvariantKind::closed_form_pure: return "closed_form_pure";
        case InvariantKind::closed_form_baby: return "closed_form_baby";
        case InvariantKind::numeric: return "numeric";
        case InvariantKind::none: return "none";
    }
    return "none";
}

namespace {

InvariantStateResult finish(const Channel& ch, InvariantKind kind, Matrix rho) {
    InvariantStateResult r;
    r.kind = kind;
    const double tr = rho.trace().real();
    r.renormalization = 1.0 / tr;
    rho /= tr;
    r.rho = std::move(rho);
    r.residual = verify_invariant(ch, r.rho);
    r.boundary_mass = boundary_mass(r.rho);
    return r;
}

InvariantStateResult none(std::string diagnosis, cplx ratio) {
    InvariantStateResult r;
    r.kind = InvariantKind::none;
    r.diagnosis = std::move(diagnosis);
    r.ratio = ratio;
    return r;
}

}  // namespace

double verify_invariant(const Channel& ch, const Matrix& rho) {
    const Matrix diff = apply_schrodinger(ch, rho) - rho;
    return trace_norm_hermitian(corner(diff, ch.dim() - 2));
}

int boundary_window(int dim) { return std::max(2, (dim + 7) / 8); }

double boundary_mass(const Matrix& rho) {
    const int dim = static_cast<int>(rho.rows());
    const int w = std::min(boundary_window(dim), dim);
    double mass = 0.0;
    for (int k = dim - w; k < dim; ++k) mass += rho(k, k).real();
    return mass / rho.trace().real();
}

// ----- Closed forms -----

InvariantStateResult invariant_state_diagonal(const Channel& ch) {
    if (ch.psi.zeta() != cplx{0.0, 0.0}) throw PreconditionViolated("diagonal invariant state needs zeta = 0");
    const double l = ch.psi.lambda();
    if (l >= 0.5) return none("geometric ratio >= 1", l < 1.0 ? l / (1.0 - l) : INFINITY);
    const double r = l / (1.0 - l);
    Matrix rho = Matrix::Zero(ch.dim(), ch.dim());
    double w = (1.0 - 2.0 * l) / (1.0 - l);
    for (int n = 0; n < ch.dim(); ++n, w *= r) rho(n, n) = w;
    auto out = finish(ch, InvariantKind::closed_form_diagonal, std::move(rho));
    out.ratio = r;
    return out;
}

InvariantStateResult invariant_pure_state_homogeneous(const Channel& ch) {
    if (!ch.model.bulk) throw PreconditionViolated("pure invariant state needs a homogeneous model");
    const double l = ch.psi.lambda();
    if (!(l > 0.0 && l < 1.0) || std::abs(std::abs(ch.psi.zeta()) - 1.0) > 1e-12)
        throw PreconditionViolated("pure invariant state needs |zeta| = 1 and 0 < lambda < 1");
    const auto [alpha, beta] = *ch.model.bulk;
    // rho = xi xi* puts q^k on entry (n+k, n); the ratio is the conjugate of the one written for
    // an inner product linear in its second slot, matching the baby-model state for alpha = 0.
    const cplx q = I_UNIT * std::conj(ch.psi.zeta()) * beta / (1.0 - alpha) * std::sqrt(l / (1.0 - l));
    if (!(l < 0.5 * (1.0 - alpha))) return none("pure ratio |q| >= 1", q);
    Vector xi(ch.dim());
    cplx w = std::sqrt(1.0 - std::norm(q));
    for (int n = 0; n < ch.dim(); ++n, w *= q) xi(n) = w;
    auto out = finish(ch, InvariantKind::closed_form_pure, xi * xi.adjoint());
    out.ratio = q;
    return out;
}

InvariantStateResult invariant_state_baby(const Channel& ch) {
    if (ch.model.kind != ModelKind::baby) throw PreconditionViolated("closed-form state needs the baby model");
    const double l = ch.psi.lambda();
    if (l >= 0.5) return none("geometric ratio >= 1", l < 1.0 ? l / (1.0 - l) : INFINITY);
    const double r = l / (1.0 - l);
    const double k0 = (1.0 - 2.0 * l) / (1.0 - l);
    const cplx w = I_UNIT * std::conj(ch.psi.zeta()) * std::sqrt(r);
    const int dim = ch.dim();
    // Entry (n+k, n) equals the state's value on e_{n,n+k}; the upper triangle is its conjugate.
    Matrix rho = Matrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        cplx v = k0 * std::pow(r, n);
        for (int k = 0; n + k < dim; ++k, v *= w) {
            rho(n + k, n) = v;
            rho(n, n + k) = std::conj(v);
        }
    }
    auto out = finish(ch, InvariantKind::closed_form_baby, std::move(rho));
    out.ratio = r;
    return out;
}

// ----- Numeric solver -----

namespace {

struct WeightedOp {
    double weight;
    Matrix op;
};

// Kraus family of the channel plus completion terms that restore trace preservation.
std::vector<WeightedOp> reflecting_family(const Channel& ch) {
    std::vector<WeightedOp> family;
    const int dim = ch.dim();
    Matrix defect = Matrix::Identity(dim, dim);
    for (const auto& k : ch.kraus) {
        family.push_back({k.weight, k.op});
        defect -= k.weight * k.op.adjoint() * k.op;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (defect + defect.adjoint()));
    for (int i = 0; i < dim; ++i) {
        const double d = es.eigenvalues()(i);
        if (d <= 1e-14) continue;
        const Vector v = es.eigenvectors().col(i);
        family.push_back({d, v * v.adjoint()});
    }
    return family;
}

}  // namespace

Matrix apply_schrodinger_reflecting(const Channel& ch, const Matrix& rho) {
    if (rho.rows() != ch.dim() || rho.cols() != ch.dim()) throw ShapeMismatch("apply_schrodinger_reflecting: dimension");
    Matrix out = Matrix::Zero(ch.dim(), ch.dim());
    for (const auto& k : reflecting_family(ch)) out.noalias() += k.weight * (k.op * rho * k.op.adjoint());
    return out;
}

InvariantStateResult solve_invariant_numeric(const Channel& ch, double tol, int max_iter) {
    if (!(tol > 0.0)) throw PreconditionViolated("tolerance must be positive");
    const int dim = ch.dim();
    const int size = dim * dim;
    const auto family = reflecting_family(ch);

    // Vectorized predual with idx(m, n) = m * N + n, minus the identity.
    using Triplet = Eigen::Triplet<cplx>;
    std::vector<Triplet> trip;
    for (const auto& k : family) {
        std::vector<std::pair<int, int>> nz;
        for (int i = 0; i < dim; ++i)
            for (int m = 0; m < dim; ++m)
                if (k.op(i, m) != cplx{0.0, 0.0}) nz.emplace_back(i, m);
        for (const auto& [i, m] : nz)
            for (const auto& [j, n] : nz) {
                if (i * dim + j == 0) continue;  // replaced by the trace row
                trip.emplace_back(i * dim + j, m * dim + n, k.weight * k.op(i, m) * std::conj(k.op(j, n)));
            }
    }
    for (int r = 1; r < size; ++r) trip.emplace_back(r, r, -1.0);
    for (int k = 0; k < dim; ++k) trip.emplace_back(0, k * dim + k, 1.0);
    Eigen::SparseMatrix<cplx> system(size, size);
    system.setFromTriplets(trip.begin(), trip.end());
    system.makeCompressed();

    Matrix rho;
    int iterations = 0;
    Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu;
    lu.compute(system);
    bool solved = false;
    if (lu.info() == Eigen::Success) {
        Vector rhs = Vector::Zero(size);
        rhs(0) = 1.0;
        const Vector sol = lu.solve(rhs);
        if (lu.info() == Eigen::Success && sol.allFinite()) {
            rho = Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(sol.data(), dim, dim);
            rho = 0.5 * (rho + rho.adjoint());
            const Matrix step = apply_schrodinger_reflecting(ch, rho) - rho;
            solved = max_abs(step) <= 1e-9 && min_eigenvalue_hermitian(rho) >= -1e-9;
        }
    }
    if (!solved) {
        // Singular or indefinite: power iteration from the uniform diagonal state.
        rho = Matrix::Identity(dim, dim) / static_cast<double>(dim);
        for (iterations = 1;; ++iterations) {
            if (iterations > max_iter) throw ConvergenceFailure("invariant state iteration did not converge");
            Matrix next = 0.5 * (rho + apply_schrodinger_reflecting(ch, rho));  // lazy step damps periodicity
            next /= next.trace().real();
            const double change = max_abs(next - rho);
            rho = std::move(next);
            if (change <= tol) break;
        }
    }
    auto out = finish(ch, InvariantKind::numeric, std::move(rho));
    out.iterations = iterations;
    if (out.boundary_mass >= kBoundaryMassThreshold) {
        out.kind = InvariantKind::none;
        out.diagnosis = "boundary mass";
    }
    return out;
}

// ----- Explicit fixed points -----

Matrix explicit_fixed_point_seed(const Channel& ch) {
    const double l = ch.psi.lambda();
    if (!(l > 0.5)) throw PreconditionViolated("explicit fixed points need lambda > 1/2");
    const int dim = ch.dim();
    const double rr = (1.0 - l) / l;
    Matrix x = Matrix::Zero(dim, dim);
    if (ch.model.kind == ModelKind::baby) {
        // Profile of the top band; zeta only enters the lower bands of each fixed point.
        for (int k = 0; k < dim; ++k) x(k, k) = l * (1.0 - std::pow(rr, k + 1));
        return x;
    }
    if (ch.model.kind == ModelKind::homogeneous) {
        if (ch.psi.zeta() != cplx{0.0, 0.0})
            throw PreconditionViolated("homogeneous fixed points are known only for zeta = 0");
        const double alpha = ch.model.bulk->first;
        const double c = l / (1.0 - l) + (2.0 * l - 1.0) / (1.0 - l) * alpha;
        for (int k = 0; k < dim; ++k) x(k, k) = c - std::pow(rr, k);
        return x;
    }
    throw PreconditionViolated("explicit fixed points need a homogeneous or baby model");
}

std::vector<Matrix> explicit_fixed_points(const Channel& ch, int count) {
    if (count < 1) throw PreconditionViolated("count must be at least 1");
    const Matrix x = explicit_fixed_point_seed(ch);
    const int dim = ch.dim();
    std::vector<Matrix> ys;
    if (ch.model.kind == ModelKind::homogeneous || ch.psi.zeta() == cplx{0.0, 0.0}) {
        for (int n = 1; n <= count; ++n) {
            Matrix y = Matrix::Zero(dim, dim);
            if (n < dim) y.bottomRows(dim - n) = x.topRows(dim - n);
            ys.push_back(std::move(y));
        }
        return ys;
    }
    // Baby model with zeta != 0: band k of y_n (entries (j+k, j)) is A_k + B_k r^j with r = (1-lambda)/lambda.
    // The top band carries lambda (1 - r^{j+1}); lower bands are fixed by the boundary equations
    // (1-lambda) A_k + lambda B_k = -i zeta c (A_{k+1} + B_{k+1}) for k >= 1 and
    // (2 lambda - 1) B_0 = -i zeta c (A_1 + B_1), choosing A_k = 0 below the top band.
    const double l = ch.psi.lambda();
    const double rr = (1.0 - l) / l;
    const cplx coupling = -I_UNIT * ch.psi.zeta() * std::sqrt(l * (1.0 - l));
    for (int n = 1; n <= count; ++n) {
        std::vector<cplx> a(n + 1, 0.0), b(n + 1, 0.0);
        a[n] = l;
        b[n] = -(1.0 - l);
        for (int k = n - 1; k >= 1; --k) b[k] = coupling * (a[k + 1] + b[k + 1]) / l;
        b[0] = coupling * (a[1] + b[1]) / (2.0 * l - 1.0);
        Matrix y = Matrix::Zero(dim, dim);
        for (int k = 0; k <= n; ++k)
            for (int j = 0; j + k < dim; ++j) y(j + k, j) = a[k] + b[k] * std::pow(rr, j);
        ys.push_back(std::move(y));
    }
    return ys;
}

double fixed_point_residual(const Channel& ch, const Matrix& y, int shift) {
    const Matrix diff = apply_heisenberg(ch, y, ApplyMode::coefficient) - y;
    return max_abs_corner(diff, ch.dim() - 2 - shift);
}

}  // namespace qbd
