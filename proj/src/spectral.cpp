// spectral.cpp: Superoperator spectra, subharmonic probe, extremality and expected verdicts

#include "qbd/spectral.hpp"

#include "qbd/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace qbd {

// ----- Superoperator -----

int dense_dimension_limit() {
    if (const char* env = std::getenv("QBD_MAX_N")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return 64;
}

SuperoperatorMatrix superoperator_matrix(const Channel& ch, BoundaryClosure closure) {
    const int dim = ch.dim();
    if (dim > dense_dimension_limit())
        throw DimensionGuard("superoperator_matrix: N = " + std::to_string(dim) + " exceeds the dense limit " +
                             std::to_string(dense_dimension_limit()));
    SuperoperatorMatrix s{dim, closure, Matrix::Zero(dim * dim, dim * dim)};
    for (int c = 0; c < dim; ++c)
        for (int d = 0; d < dim; ++d)
            for (const auto& t : unit_image(ch.model, ch.psi, c, d))
                if (t.row < dim && t.col < dim) s.m(t.row * dim + t.col, c * dim + d) += t.coef;
    if (closure == BoundaryClosure::reflected_jump) {
        const double l = ch.psi.lambda();
        const auto& b = ch.model.beta;
        for (int c = 1; c <= dim; ++c)
            for (int d = 1; d <= dim; ++d) {
                if (c < dim && d < dim) continue;
                const int k = (c - 1) * dim + (d - 1);
                s.m(k, k) += l * b[c] * b[d];
            }
    }
    return s;
}

Matrix unflatten(const Vector& v, int dim) {
    Matrix x(dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) x(a, b) = v(a * dim + b);
    return x;
}

// ----- Spectrum -----

void dense_eigen(const Matrix& a, Vector& values, Matrix* vectors) {
    if (a.rows() != a.cols()) throw ShapeMismatch("dense_eigen: matrix must be square");
    const lapack_int n = static_cast<lapack_int>(a.rows());
    Matrix work = a;
    values.resize(n);
    Matrix vr;
    if (vectors) vr.resize(n, n);
    const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', vectors ? 'V' : 'N', n, work.data(), n, values.data(),
                                          nullptr, 1, vectors ? vr.data() : nullptr, vectors ? n : 1);
    if (info != 0) throw EigensolveFailure("zgeev failed with info = " + std::to_string(info));
    if (vectors) *vectors = std::move(vr);
}

void dense_eigen_bounded(const Matrix& a, Vector& values, Matrix& vectors, RealVector& bounds) {
    if (a.rows() != a.cols()) throw ShapeMismatch("dense_eigen_bounded: matrix must be square");
    const lapack_int n = static_cast<lapack_int>(a.rows());
    Matrix work = a;
    values.resize(n);
    vectors.resize(n, n);
    Matrix vl(n, n);
    RealVector scale(n), rconde(n), rcondv(n);
    lapack_int ilo = 0, ihi = 0;
    double abnrm = 0.0;
    const lapack_int info =
        LAPACKE_zgeevx(LAPACK_COL_MAJOR, 'B', 'V', 'V', 'E', n, work.data(), n, values.data(), vl.data(), n,
                       vectors.data(), n, &ilo, &ihi, scale.data(), &abnrm, rconde.data(), rcondv.data());
    if (info != 0) throw EigensolveFailure("zgeevx failed with info = " + std::to_string(info));
    bounds.resize(n);
    const double eps = std::numeric_limits<double>::epsilon();
    for (lapack_int i = 0; i < n; ++i) bounds(i) = rconde(i) > 0.0 ? eps * abnrm / rconde(i) : INFINITY;
}

SpectrumReport peripheral_spectrum(const Channel& ch, double tol) {
    const int dim = ch.dim();
    const auto sup = superoperator_matrix(ch);
    Vector values;
    Matrix vectors;
    RealVector bounds;
    dense_eigen_bounded(sup.m, values, vectors, bounds);

    std::vector<int> order(values.size());
    for (int i = 0; i < static_cast<int>(order.size()); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return std::abs(values(i)) > std::abs(values(j)); });

    SpectrumReport rep;
    double largest_inner = -1.0;
    for (int i : order) {
        const cplx mu = values(i);
        rep.eigenvalues.push_back(mu);
        // Eigenvalues whose error bound reaches the peripheral band decide how far the count can be trusted.
        // First-order bounds of defective eigenvalues near 0 say nothing about the circle, hence |mu| >= 1/2.
        if (std::abs(mu) >= 0.5 && std::abs(mu) + bounds(i) >= 1.0 - tol) rep.peripheral_error_bound = std::max(rep.peripheral_error_bound, bounds(i));
        if (std::abs(mu) < 1.0 - tol) {
            largest_inner = std::max(largest_inner, std::abs(mu));
            continue;
        }
        Matrix x = unflatten(vectors.col(i), dim);
        x /= max_abs(x);
        const double res = max_abs_corner(apply_heisenberg(ch, x, ApplyMode::coefficient) - mu * x, dim - 2);
        rep.peripheral.push_back({mu, res});
        if (std::abs(mu - 1.0) <= tol && res <= 10.0 * tol) {
            ++rep.fixed_dim;
            rep.fixed_vectors.push_back(std::move(x));
        }
    }
    rep.gap = largest_inner < 0.0 ? 0.0 : 1.0 - largest_inner;
    return rep;
}

// ----- Subharmonic projections -----

namespace {

struct ProbeOutcome {
    double margin;
    double kraus;
};

ProbeOutcome probe_candidate(const Channel& ch, const Matrix& p) {
    const int last = ch.dim() - 2;
    const Matrix diff = apply_heisenberg(ch, p) - p;
    ProbeOutcome out{min_eigenvalue_hermitian(corner(diff, last)), 0.0};
    for (const auto& k : ch.kraus)
        out.kraus = std::max(out.kraus, max_abs_corner(k.op * p - p * k.op * p, last));
    return out;
}

}  // namespace

SubharmonicVerdict subharmonic_probe(const Channel& ch, double tol, const SpectrumReport* spectrum,
                                     const std::vector<ProbeCandidate>& extra) {
    const int dim = ch.dim();
    std::vector<std::pair<Matrix, std::string>> candidates;
    for (int k = 0; k <= dim - 3; ++k) {
        const Matrix p = interval_projection(0, k, dim);
        const std::string name = "p_[0," + std::to_string(k) + "]";
        candidates.emplace_back(p, name);
        candidates.emplace_back(complement(p), "complement of " + name);
    }
    if (spectrum) {
        int index = 0;
        for (const auto& x : spectrum->fixed_vectors) {
            const Matrix parts[2] = {0.5 * (x + x.adjoint()), (x - x.adjoint()) / (2.0 * I_UNIT)};
            for (const auto& h : parts) {
                const double scale = max_abs(h);
                if (scale <= 1e-9) continue;
                // One projection per cluster of (numerically) equal eigenvalues.
                Eigen::SelfAdjointEigenSolver<Matrix> es(h);
                const auto& ev = es.eigenvalues();
                int start = 0;
                for (int j = 1; j <= dim; ++j) {
                    if (j < dim && ev(j) - ev(j - 1) <= 1e-6 * scale) continue;
                    const Matrix v = es.eigenvectors().middleCols(start, j - start);
                    candidates.emplace_back(v * v.adjoint(), "spectral projection of fixed element " + std::to_string(index) +
                                                                 ", eigenvalues " + std::to_string(start) + ".." +
                                                                 std::to_string(j - 1));
                    start = j;
                }
            }
            ++index;
        }
    }
    for (const auto& c : extra) {
        if (c.projection.rows() != dim || c.projection.cols() != dim) throw ShapeMismatch("subharmonic_probe: candidate dimension");
        candidates.emplace_back(c.projection, c.label);
    }
    SubharmonicVerdict verdict;
    const int last = dim - 2;
    for (const auto& [p, name] : candidates) {
        // The interior test cannot see the top boundary: skip candidates that are trivial on the interior
        // or that couple it to the boundary.
        const Matrix c = corner(p, last);
        const double rank = c.trace().real();
        if (rank < 0.5 || rank > last + 0.5 || max_abs(c * c - c) > 1e-2) continue;
        ++verdict.candidates_tested;
        const auto o = probe_candidate(ch, p);
        if (o.margin >= -tol) {
            verdict.found = true;
            verdict.projection = p;
            verdict.label = name;
            verdict.psd_margin = o.margin;
            verdict.kraus_criterion = o.kraus;
            return verdict;
        }
    }
    verdict.label = "no_subharmonic_found";
    return verdict;
}

// ----- Extremality -----

std::string to_string(Extremality e) {
    switch (e) {
        case Extremality::extremal: return "extremal";
        case Extremality::not_extremal: return "not_extremal";
        case Extremality::undetermined: return "undetermined";
    }
    return "undetermined";
}

Matrix apply_kraus_family(const std::vector<WeightedKraus>& family, const Matrix& x) {
    Matrix out = Matrix::Zero(x.rows(), x.cols());
    for (const auto& k : family) out.noalias() += k.weight * (k.op.adjoint() * x * k.op);
    return out;
}

namespace {

int numerical_rank(const std::vector<Matrix>& items, int last) {
    if (items.empty()) return 0;
    const int side = last + 1;
    Matrix v(side * side, static_cast<int>(items.size()));
    for (int i = 0; i < static_cast<int>(items.size()); ++i)
        v.col(i) = Eigen::Map<const Vector>(corner(items[i], last).eval().data(), side * side);
    const Matrix gram = v.adjoint() * v;
    Eigen::JacobiSVD<Matrix> svd(gram);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    const double cut = static_cast<double>(side + 1) * 1e-12 * sv(0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cut) ++rank;
    return rank;
}

}  // namespace

ExtremalityReport extremality_report(const Channel& ch) {
    const int dim = ch.dim();
    const int last = dim - 2;
    ExtremalityReport rep;

    std::vector<Matrix> ops;
    std::vector<Matrix> products;
    for (const auto& ki : ch.kraus) ops.push_back(ki.op);
    for (const auto& ki : ch.kraus)
        for (const auto& kj : ch.kraus) products.push_back(std::sqrt(ki.weight * kj.weight) * ki.op.adjoint() * kj.op);
    rep.kraus_rank = numerical_rank(ops, last);
    rep.gram_rank = numerical_rank(products, last);

    const auto ops_basis = basis_operators(ch.model, dim);
    const Matrix sa = ops_basis.s.adjoint();
    const auto flags = classify_state(ch.psi);
    if (is_psi_plus(ch.psi)) {
        const auto& a = ch.model.alpha;
        const double mu = a[1] * a[1];
        bool multiple_of_one = mu > 1e-12;
        bool multiple_of_p0 = mu > 1e-12;
        for (int n = 1; n + 1 <= ch.model.n_max(); ++n) {
            const double v = a[n + 1] * a[n + 1];
            if (std::abs(v - mu) > 1e-12) multiple_of_one = false;
            if (std::abs(v) > 1e-12) multiple_of_p0 = false;
        }
        const Matrix middle = sa * ops_basis.a * ops_basis.s;
        const Matrix raise = ops_basis.b * ops_basis.s;
        rep.split_mu = mu;
        if (multiple_of_one) {
            rep.verdict = Extremality::not_extremal;
            rep.decomposition.push_back({mu, {{1.0 / mu, middle}}});
            rep.decomposition.push_back({1.0 - mu, {{1.0 / (1.0 - mu), raise}}});
        } else if (multiple_of_p0) {
            rep.verdict = Extremality::not_extremal;
            rep.decomposition.push_back({0.5, {{1.0, middle + raise}}});
            rep.decomposition.push_back({0.5, {{1.0, middle - raise}}});
        } else {
            rep.verdict = Extremality::extremal;
        }
    } else if (flags.pure) {
        rep.verdict = Extremality::extremal;
    } else {
        rep.verdict = Extremality::not_extremal;
        const double w3 = (1.0 - ch.psi.lambda()) * (1.0 - std::norm(ch.psi.zeta()));
        ConvexPart first{w3, {}};
        ConvexPart second{1.0 - w3, {}};
        for (const auto& k : ch.kraus) {
            if (k.label >= 3) first.kraus.push_back({1.0, k.op});
            else second.kraus.push_back({ch.psi.lambda() / (1.0 - w3), k.op});
        }
        rep.decomposition.push_back(std::move(first));
        rep.decomposition.push_back(std::move(second));
    }

    if (rep.decomposition.size() == 2) {
        const Matrix one = Matrix::Identity(dim, dim);
        for (const auto& part : rep.decomposition)
            rep.unitality_error = std::max(rep.unitality_error, max_abs_corner(apply_kraus_family(part.kraus, one) - one, last));
        for (int m = 0; m <= last; ++m)
            for (int n = 0; n <= last; ++n) {
                const Matrix e = matrix_unit(m, n, dim);
                const Matrix t1 = apply_kraus_family(rep.decomposition[0].kraus, e);
                const Matrix t2 = apply_kraus_family(rep.decomposition[1].kraus, e);
                const Matrix mix = rep.decomposition[0].weight * t1 + rep.decomposition[1].weight * t2;
                rep.recombination_error = std::max(rep.recombination_error, max_abs_corner(mix - apply_heisenberg(ch, e), last));
                rep.parts_distance = std::max(rep.parts_distance, max_abs_corner(t1 - t2, last));
            }
        const Matrix p0 = matrix_unit(0, 0, dim);
        rep.part1_p0_01 = apply_kraus_family(rep.decomposition[0].kraus, p0)(0, 1);
        rep.part2_p0_01 = apply_kraus_family(rep.decomposition[1].kraus, p0)(0, 1);
    }
    return rep;
}

// ----- Recursions -----

RecursionReport recursion_residuals(const Channel& ch, const Matrix& x, cplx mu) {
    if (std::abs(std::abs(mu) - 1.0) > 1e-9) throw PreconditionViolated("recursion needs |mu| = 1");
    const bool baby = ch.model.kind == ModelKind::baby;
    const bool homogeneous = ch.model.kind == ModelKind::homogeneous;
    if (!baby && !homogeneous) throw PreconditionViolated("recursion needs a baby or homogeneous model");
    if (homogeneous && ch.psi.zeta() != cplx{0.0, 0.0})
        throw PreconditionViolated("homogeneous recursion needs zeta = 0");
    const double l = ch.psi.lambda();
    if (!(l > 0.0)) throw PreconditionViolated("transfer matrix needs lambda > 0");
    const int dim = ch.dim();
    if (x.rows() != dim || x.cols() != dim) throw ShapeMismatch("recursion_residuals: dimension");

    RecursionReport rep;
    const auto& a = ch.model.alpha;
    const auto& b = ch.model.beta;
    const double c = std::sqrt(l * (1.0 - l));
    const cplx z = ch.psi.zeta();
    const cplx zb = std::conj(z);
    for (int m = 0; m <= dim - 2; ++m)
        for (int n = 0; n <= dim - 2; ++n) {
            cplx rhs;
            if (baby) {
                if (m == 0 && n == 0)
                    rhs = (1.0 - l) * x(0, 0) + l * x(1, 1) + I_UNIT * zb * c * x(0, 1) - I_UNIT * z * c * x(1, 0);
                else if (n == 0)
                    rhs = l * x(m + 1, 1) - I_UNIT * z * c * x(m + 1, 0);
                else if (m == 0)
                    rhs = l * x(1, n + 1) + I_UNIT * zb * c * x(0, n + 1);
                else
                    rhs = l * x(m + 1, n + 1) + (1.0 - l) * x(m - 1, n - 1);
            } else {
                rhs = (l * a[m + 1] * a[n + 1] + (1.0 - l) * a[m] * a[n]) * x(m, n) +
                      l * b[m + 1] * b[n + 1] * x(m + 1, n + 1);
                if (m >= 1 && n >= 1) rhs += (1.0 - l) * b[m] * b[n] * x(m - 1, n - 1);
            }
            rep.max_residual = std::max(rep.max_residual, std::abs(mu * x(m, n) - rhs));
        }

    const double alpha = baby ? 0.0 : ch.model.bulk->first;
    const double beta = baby ? 1.0 : ch.model.bulk->second;
    rep.transfer << (mu - alpha * alpha) / (l * beta * beta), -(1.0 - l) / l, 1.0, 0.0;
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(rep.transfer);
    cplx w1 = es.eigenvalues()(0);
    cplx w2 = es.eigenvalues()(1);
    if (std::abs(w1) > std::abs(w2)) std::swap(w1, w2);
    rep.omega1 = w1;
    rep.omega2 = w2;
    rep.det_identity_error = std::abs(w1 * w2 - rep.transfer.determinant());
    rep.trace_identity_error = std::abs(w1 + w2 - rep.transfer.trace());
    return rep;
}

// ----- Expected verdicts -----

std::string to_string(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        case Tri::unknown: return "unknown";
        case Tri::not_applicable: return "n/a";
    }
    return "unknown";
}

TheoremVerdicts theorem_verdicts(const ModelParameters& model, const QubitState& psi) {
    const auto flags = classify_state(psi);
    const double l = psi.lambda();
    const bool diagonal = flags.diagonal;
    const bool baby = model.kind == ModelKind::baby;
    const bool bulk = model.bulk.has_value();
    const bool homogeneous_diag = bulk && diagonal;
    const double alpha = bulk ? model.bulk->first : 0.0;
    const bool pure_threshold = bulk && flags.pure && l < 0.5 * (1.0 - alpha);
    const bool plus = is_psi_plus(psi);
    const bool minus = is_psi_minus(psi);

    static const std::string kIrred = "irreducibility theorem: \"The transition operator T_psi is irreducible\" for faithful psi";
    static const std::string kPoles = "psi+- example: p_0 is subharmonic for psi_-, its complement for psi_+";
    static const std::string kPureSupport = "homogeneous pure-state proposition: \"admits a pure invariant normal state\" whose support is subharmonic";
    static const std::string kIrredOpen = "summary: \"we do not have any results concerning irreducibility\" for this pure state";
    static const std::string kDiag = "diagonal invariant-state proposition: \"if and only if lambda < 1/2\"";
    static const std::string kBaby = "baby-maser invariant-state theorem: \"In this case phi is given by\", exists iff lambda < 1/2";
    static const std::string kPure = "homogeneous pure-state proposition: \"if and only if lambda < 1/2(1-alpha)\"";
    static const std::string kInvOpen = "\"we do not have general results about invariant normal states\"";
    static const std::string kMinus = "psi+- example: \"T_{psi_-} is weakly mixing\" for any model parameters";
    static const std::string kFaithfulMix = "weak-mixing theorem: faithful psi with an invariant normal state gives \"T_psi is weakly mixing\"";
    static const std::string kHomMix = "homogeneous mixing proposition: \"weakly mixing (hence ergodic) if and only if lambda <= 1/2\"";
    static const std::string kBabyMix = "baby-maser mixing theorem: \"weakly mixing ... if and only if lambda <= 1/2\"; \"the fixed point space is infinite dimensional\" otherwise";
    static const std::string kPlusOpen = "psi+- example: \"In general, T_{psi_+} is not ergodic\" yet weakly mixing for beta_n = 2^-n";
    static const std::string kMixOpen = "no result covers this state; numeric evidence only";

    TheoremVerdicts v;
    // Irreducibility.
    if (flags.faithful) v.irreducible = {Tri::yes, kIrred};
    else if (plus || minus) v.irreducible = {Tri::no, kPoles};
    else if (pure_threshold) v.irreducible = {Tri::no, kPureSupport};
    else v.irreducible = {Tri::unknown, kIrredOpen};

    // Invariant normal state.
    if (baby) v.invariant_state = {l < 0.5 ? Tri::yes : Tri::no, kBaby};
    else if (diagonal) v.invariant_state = {l < 0.5 ? Tri::yes : Tri::no, kDiag};
    else if (pure_threshold) v.invariant_state = {Tri::yes, kPure};
    else v.invariant_state = {Tri::unknown, kInvOpen};

    // Weak mixing.
    if (minus) v.weak_mixing = {Tri::yes, kMinus};
    else if (baby) v.weak_mixing = {l <= 0.5 ? Tri::yes : Tri::no, kBabyMix};
    else if (homogeneous_diag) v.weak_mixing = {l <= 0.5 ? Tri::yes : Tri::no, kHomMix};
    else if (diagonal && l < 0.5) v.weak_mixing = {Tri::yes, kFaithfulMix};
    else if (plus) v.weak_mixing = {Tri::unknown, kPlusOpen};
    else v.weak_mixing = {Tri::unknown, kMixOpen};

    // Pure invariant state, homogeneous and baby models with pure psi.
    if (bulk && flags.pure) v.pure_invariant_state = {pure_threshold ? Tri::yes : Tri::no, kPure};
    else v.pure_invariant_state = {Tri::not_applicable, "requires a homogeneous model and a pure state"};
    return v;
}

// ----- psi_plus example with geometric beta -----

ModelParameters make_halving_model(int n_max) {
    std::vector<double> alpha(n_max + 1), beta(n_max + 1);
    alpha[0] = 1.0;
    beta[0] = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        beta[n] = std::ldexp(1.0, -n);
        alpha[n] = std::sqrt(1.0 - beta[n] * beta[n]);
    }
    return make_general(std::move(alpha), std::move(beta));
}

double halving_growth_factor(int m, int k, cplx mu) {
    const double g = std::sqrt((1.0 - std::ldexp(1.0, -2 * m - 2)) * (1.0 - std::ldexp(1.0, -2 * (m + k) - 2)));
    return std::ldexp(1.0, 2 * m + k + 2) * std::abs(mu - g);
}

PsiPlusMixingReport example_psiplus_mixing_check(const Truncation& trunc) {
    if (trunc.dim > 32) throw PreconditionViolated("example_psiplus_mixing_check needs N <= 32");
    const auto model = make_halving_model(trunc.dim);
    const auto ch = kraus_set(model, psi_plus(), trunc);
    PsiPlusMixingReport rep;
    rep.spectrum = peripheral_spectrum(ch);
    rep.weakly_mixing_numeric = rep.spectrum.weakly_mixing();

    // The factor is smallest at mu = 1, the point of the circle nearest the positive real root.
    std::vector<cplx> mus{1.0};
    for (int j = 1; j < 64; ++j) mus.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / 64.0));
    rep.growth_bound_ok = true;
    rep.min_growth_factor = INFINITY;
    for (int k = 1; k <= 5; ++k) {
        const double bound = std::ldexp(1.0, k - 1) + std::ldexp(1.0, -k - 1);
        if (bound < 1.25) rep.growth_bound_ok = false;
        for (int m = 0; m <= 10; ++m)
            for (const auto& mu : mus) {
                const double f = halving_growth_factor(m, k, mu);
                rep.min_growth_factor = std::min(rep.min_growth_factor, f);
                if (f < bound - 1e-12) rep.growth_bound_ok = false;
            }
    }
    for (int m = 0; m <= 10; ++m)
        for (const auto& mu : mus) {
            const double p = std::ldexp(1.0, 2 * m + 2);
            const cplx lhs = p * (mu - (1.0 - std::ldexp(1.0, -2 * m - 2)));
            const cplx rhs = p * (mu - 1.0) + 1.0;
            rep.diagonal_factor_error = std::max(rep.diagonal_factor_error, std::abs(lhs - rhs));
        }
    return rep;
}

}  // namespace qbd
