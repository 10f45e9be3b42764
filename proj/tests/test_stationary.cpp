// test_stationary.cpp: Closed-form invariant states, numeric solver and explicit fixed points

#include "qbd/errors.hpp"
#include "qbd/stationary.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace qbd;

namespace {

Channel channel(const ModelParameters& model, double l, cplx z, int dim) {
    return kraus_set(model, qubit_state(l, z), make_truncation(dim));
}

double trace_distance(const Matrix& a, const Matrix& b) { return 0.5 * trace_norm_hermitian(a - b); }

}  // namespace

TEST(DiagonalState, GeometricLawAtOneThird) {
    for (const auto& model : {make_baby(66), make_homogeneous(0.6, 0.8, 66), make_jaynes_cummings(0.7, 66)}) {
        const auto ch = channel(model, 1.0 / 3.0, 0.0, 64);
        const auto st = invariant_state_diagonal(ch);
        ASSERT_EQ(st.kind, InvariantKind::closed_form_diagonal);
        for (int n = 0; n < 40; ++n) EXPECT_NEAR(st.rho(n, n).real(), std::pow(0.5, n + 1), 1e-15);
        EXPECT_LE(st.residual, 1e-10);
        EXPECT_LE(oracle::invariance_residual(model, 1.0 / 3.0, 0.0, st.rho, 62), 1e-10);
    }
}

TEST(DiagonalState, ResidualAtQuarter) {
    const auto model = make_homogeneous(0.6, 0.8, 66);
    const auto st = invariant_state_diagonal(channel(model, 0.25, 0.0, 64));
    EXPECT_LE(st.residual, 1e-10);
    EXPECT_LE(oracle::invariance_residual(model, 0.25, 0.0, st.rho, 62), 1e-10);
}

TEST(DiagonalState, NoneFromHalfOn) {
    for (double l : {0.5, 0.6, 1.0}) {
        const auto st = invariant_state_diagonal(channel(make_baby(20), l, 0.0, 16));
        EXPECT_EQ(st.kind, InvariantKind::none);
        EXPECT_EQ(st.diagnosis, "geometric ratio >= 1");
    }
    EXPECT_THROW(invariant_state_diagonal(channel(make_baby(20), 0.3, 0.2, 16)), PreconditionViolated);
}

TEST(BabyState, ResidualAtCriterionPoint) {
    const auto model = make_baby(50);
    const auto st = invariant_state_baby(channel(model, 0.25, 0.6, 48));
    ASSERT_EQ(st.kind, InvariantKind::closed_form_baby);
    EXPECT_LE(st.residual, 1e-8);
    EXPECT_LE(oracle::invariance_residual(model, 0.25, 0.6, st.rho, 46), 1e-8);
    EXPECT_GE(min_eigenvalue_hermitian(st.rho), -1e-14);
    EXPECT_NEAR(st.rho.trace().real(), 1.0, 1e-14);
}

TEST(BabyState, ReducesToDiagonalStateAtZeroZeta) {
    const auto ch = channel(make_baby(40), 0.25, 0.0, 38);
    const auto b = invariant_state_baby(ch);
    const auto d = invariant_state_diagonal(ch);
    EXPECT_LE(oracle::max_abs(b.rho - d.rho), 1e-15);
    for (int n = 0; n < 20; ++n) EXPECT_NEAR(b.rho(n, n).real(), (2.0 / 3.0) * std::pow(1.0 / 3.0, n), 1e-15);
}

TEST(BabyState, FirstOffDiagonalForUnitZeta) {
    const auto st = invariant_state_baby(channel(make_baby(40), 0.25, 1.0, 38));
    // The state's value on e_{n,n+1} sits at entry (n+1, n).
    for (int n = 0; n < 20; ++n) {
        const cplx expect = (2.0 / 3.0) * cplx(0.0, 1.0 / std::sqrt(3.0)) * std::pow(1.0 / 3.0, n);
        EXPECT_NEAR(std::abs(st.rho(n + 1, n) - expect), 0.0, 1e-15);
    }
}

TEST(BabyState, InvariantAcrossTheDisc) {
    const auto model = make_baby(42);
    for (double l : {0.1, 0.25, 0.4})
        for (double r : {0.0, 0.5, 1.0})
            for (double ph : {0.0, 0.8, 2.9}) {
                const auto st = invariant_state_baby(channel(model, l, std::polar(r, ph), 40));
                EXPECT_LE(oracle::invariance_residual(model, l, std::polar(r, ph), st.rho, 38), 1e-8)
                    << l << " " << r << " " << ph;
            }
}

TEST(BabyState, NoneAboveThreshold) {
    const auto st = invariant_state_baby(channel(make_baby(20), 0.6, 0.3, 16));
    EXPECT_EQ(st.kind, InvariantKind::none);
    EXPECT_NEAR(st.ratio.real(), 1.5, 1e-15);
}

TEST(PureState, CriterionPoint) {
    const auto model = make_homogeneous(0.6, 0.8, 66);
    const auto st = invariant_pure_state_homogeneous(channel(model, 0.15, cplx(0, 1), 64));
    ASSERT_EQ(st.kind, InvariantKind::closed_form_pure);
    EXPECT_NEAR(std::abs(st.ratio), 2.0 * std::sqrt(0.15 / 0.85), 1e-14);
    EXPECT_NEAR(std::abs(st.ratio), 0.8402, 5e-5);
    EXPECT_LE(st.residual, 1e-8);
    EXPECT_LE(oracle::invariance_residual(model, 0.15, cplx(0, 1), st.rho, 62), 1e-8);
    Eigen::SelfAdjointEigenSolver<Matrix> es(st.rho, Eigen::EigenvaluesOnly);
    EXPECT_NEAR(es.eigenvalues()(63), 1.0, 1e-12);
    EXPECT_NEAR(es.eigenvalues()(62), 0.0, 1e-12);
}

TEST(PureState, PhaseFollowsConjugateZeta) {
    // A rank-one invariant state exists for every phase of zeta; its ratio carries i * conj(zeta).
    const auto model = make_homogeneous(0.6, 0.8, 66);
    for (double ph : {0.0, 0.7, 1.5707963267948966, 3.0}) {
        const cplx z = std::polar(1.0, ph);
        const auto st = invariant_pure_state_homogeneous(channel(model, 0.12, z, 64));
        ASSERT_EQ(st.kind, InvariantKind::closed_form_pure);
        EXPECT_NEAR(std::arg(st.ratio / (cplx(0, 1) * std::conj(z))), 0.0, 1e-14);
        EXPECT_LE(oracle::invariance_residual(model, 0.12, z, st.rho, 62), 1e-8);
    }
}

TEST(PureState, BabyRatioAndAgreementWithBabyState) {
    const auto model = make_baby(42);
    const auto ch = channel(model, 1.0 / 3.0, 1.0, 40);
    const auto pure = invariant_pure_state_homogeneous(ch);
    ASSERT_EQ(pure.kind, InvariantKind::closed_form_pure);
    EXPECT_NEAR(std::norm(pure.ratio), 0.5, 1e-15);
    EXPECT_NEAR(std::abs(pure.ratio - cplx(0, 1) / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_LE(oracle::max_abs(pure.rho - invariant_state_baby(ch).rho), 1e-13);
    // The opposite phase -i/sqrt(2) does not give an invariant vector state.
    Vector xi(40);
    cplx w = std::sqrt(0.5);
    for (int n = 0; n < 40; ++n, w *= cplx(0, -1) / std::sqrt(2.0)) xi(n) = w;
    EXPECT_GT(oracle::invariance_residual(model, 1.0 / 3.0, 1.0, xi * xi.adjoint(), 38), 0.1);
}

TEST(PureState, NoneAtOrAboveThreshold) {
    const auto st = invariant_pure_state_homogeneous(channel(make_homogeneous(0.6, 0.8, 30), 0.25, cplx(0, 1), 24));
    EXPECT_EQ(st.kind, InvariantKind::none);
    EXPECT_GE(std::abs(st.ratio), 1.0);
    EXPECT_THROW(invariant_pure_state_homogeneous(channel(make_homogeneous(0.6, 0.8, 30), 0.1, 0.5, 24)),
                 PreconditionViolated);
    EXPECT_THROW(invariant_pure_state_homogeneous(channel(make_jaynes_cummings(0.7, 30), 0.1, 1.0, 24)),
                 PreconditionViolated);
}

TEST(NumericState, MatchesBabyClosedForm) {
    const auto ch = channel(make_baby(50), 0.25, 0.5, 48);
    const auto num = solve_invariant_numeric(ch);
    ASSERT_EQ(num.kind, InvariantKind::numeric);
    EXPECT_LE(trace_distance(num.rho, invariant_state_baby(ch).rho), 1e-6);
    EXPECT_LE(verify_invariant(ch, invariant_state_baby(ch).rho), 1e-8);
}

TEST(NumericState, GroundStateForPsiMinus) {
    for (const auto& model : {make_baby(18), make_homogeneous(0.6, 0.8, 18), make_jaynes_cummings(0.7, 18)}) {
        const auto num = solve_invariant_numeric(kraus_set(model, psi_minus(), make_truncation(16)));
        ASSERT_EQ(num.kind, InvariantKind::numeric);
        EXPECT_LE(oracle::max_abs(num.rho - interval_projection(0, 0, 16)), 1e-10);
    }
    EXPECT_EQ(verify_invariant(kraus_set(make_baby(10), psi_minus(), make_truncation(8)), interval_projection(0, 0, 8)),
              0.0);
}

TEST(NumericState, BoundaryMassDiagnosis) {
    for (double l : {0.6, 0.7}) {
        const auto num = solve_invariant_numeric(channel(make_baby(50), l, 0.3, 48));
        EXPECT_EQ(num.kind, InvariantKind::none);
        EXPECT_EQ(num.diagnosis, "boundary mass");
        EXPECT_GE(num.boundary_mass, kBoundaryMassThreshold);
    }
    const auto diag = solve_invariant_numeric(channel(make_homogeneous(0.6, 0.8, 50), 0.5, 0.0, 48));
    EXPECT_EQ(diag.kind, InvariantKind::none);
    EXPECT_GE(diag.boundary_mass, kBoundaryMassThreshold);
}

TEST(NumericState, ReflectingPredualPreservesTrace) {
    std::mt19937_64 rng(43);
    const auto ch = channel(make_homogeneous(0.6, 0.8, 14), 0.7, cplx(0.2, 0.4), 12);
    const Matrix rho = oracle::random_density(rng, 12, 11);
    const Matrix out = apply_schrodinger_reflecting(ch, rho);
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-13);
    EXPECT_GE(min_eigenvalue_hermitian(out), -1e-13);
}

TEST(BoundaryWindow, Size) {
    EXPECT_EQ(boundary_window(8), 2);
    EXPECT_EQ(boundary_window(24), 3);
    EXPECT_EQ(boundary_window(48), 6);
    Matrix rho = Matrix::Zero(24, 24);
    rho(23, 23) = 1.0;
    rho(0, 0) = 3.0;
    EXPECT_NEAR(boundary_mass(rho), 0.25, 1e-15);
}

TEST(FixedPoints, BabySeedProfile) {
    const Matrix x = explicit_fixed_point_seed(channel(make_baby(14), 0.75, 0.0, 12));
    double third = 1.0;
    for (int k = 0; k < 12; ++k) {
        third /= 3.0;
        EXPECT_NEAR(x(k, k).real(), 0.75 * (1.0 - third), 1e-15);
    }
    EXPECT_NEAR(x(1, 1).real(), 0.75 * 8.0 / 9.0, 1e-15);
}

TEST(FixedPoints, HomogeneousSeed) {
    const Matrix x = explicit_fixed_point_seed(channel(make_homogeneous(0.6, 0.8, 14), 0.75, 0.0, 12));
    double d = 1.0;
    for (int k = 0; k < 12; ++k, d /= 3.0) EXPECT_NEAR(x(k, k).real(), 4.2 - d, 1e-14);
    EXPECT_THROW(explicit_fixed_point_seed(channel(make_baby(14), 0.5, 0.0, 12)), PreconditionViolated);
}

TEST(FixedPoints, FiveFixedPointsSolveTheOracle) {
    const int dim = 24;
    struct Case {
        ModelParameters model;
        double l;
        cplx z;
    };
    const std::vector<Case> cases{{make_baby(dim + 2), 0.75, 0.0},
                                  {make_baby(dim + 2), 0.75, cplx(0.3, 0.0)},
                                  {make_baby(dim + 2), 0.8, std::polar(0.9, 1.1)},
                                  {make_homogeneous(0.6, 0.8, dim + 2), 0.75, 0.0}};
    for (const auto& c : cases) {
        const auto ch = channel(c.model, c.l, c.z, dim);
        const auto ys = explicit_fixed_points(ch, 5);
        ASSERT_EQ(ys.size(), 5u);
        Matrix stack(dim * dim, 5);
        for (int n = 0; n < 5; ++n) {
            const Matrix& y = ys[n];
            const int last = dim - 3 - n;
            EXPECT_LE(oracle::max_abs_corner(oracle::heisenberg(c.model, c.l, c.z, y) - y, last), 1e-10)
                << "y_" << n + 1 << " lambda=" << c.l;
            EXPECT_LE(fixed_point_residual(ch, y, n + 1), 1e-10);
            stack.col(n) = Eigen::Map<const Vector>(y.data(), dim * dim);
        }
        EXPECT_EQ(Eigen::FullPivLU<Matrix>(stack).rank(), 5);
    }
}

TEST(FixedPoints, SupportedModels) {
    EXPECT_THROW(explicit_fixed_points(channel(make_homogeneous(0.6, 0.8, 14), 0.75, 0.3, 12), 2),
                 PreconditionViolated);
    EXPECT_THROW(explicit_fixed_points(channel(make_jaynes_cummings(0.7, 14), 0.75, 0.0, 12), 2),
                 PreconditionViolated);
}
