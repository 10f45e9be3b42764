// test_operators.cpp: Shift, diagonals, projections, dilation and slice maps

#include "qbd/errors.hpp"
#include "qbd/operators.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace qbd;

TEST(Operators, BabyBasis) {
    const auto ops = basis_operators(make_baby(4), 3);
    EXPECT_EQ(ops.a.diagonal().real(), Eigen::Vector3d(1, 0, 0));
    EXPECT_EQ(ops.b.diagonal().real(), Eigen::Vector3d(0, 1, 1));
    EXPECT_EQ(ops.s(1, 0), cplx(1.0));
    EXPECT_EQ(ops.s(2, 1), cplx(1.0));
    EXPECT_EQ(ops.s.col(2).norm(), 0.0);
}

TEST(Operators, LoweringTermActsOnBasis) {
    const auto m = make_homogeneous(0.6, 0.8, 8);
    const auto ops = basis_operators(m, 6);
    const Vector e1 = Vector::Unit(6, 1);
    const Vector img = ops.s.adjoint() * ops.b * e1;
    EXPECT_NEAR(std::abs(img(0) - 0.8), 0.0, 1e-15);
    EXPECT_NEAR(img.norm(), 0.8, 1e-15);
}

TEST(Operators, ShiftIsAnIsometryOffTheTop) {
    const auto ops = basis_operators(make_baby(10), 8);
    const Matrix ss = ops.s.adjoint() * ops.s;
    EXPECT_LE(oracle::max_abs_corner(ss - Matrix::Identity(8, 8), 6), 0.0);
    EXPECT_EQ(ss(7, 7), cplx(0.0));
}

TEST(Operators, UnitsAndProjections) {
    const auto e = matrix_unit(1, 2, 4);
    EXPECT_EQ(e(1, 2), cplx(1.0));
    EXPECT_EQ(e.cwiseAbs().sum(), 1.0);
    const auto p = interval_projection(1, 2, 4);
    EXPECT_EQ(p.trace(), cplx(2.0));
    EXPECT_EQ((complement(p) * p).norm(), 0.0);
    EXPECT_THROW(matrix_unit(4, 0, 4), IndexOutOfRange);
    EXPECT_THROW(interval_projection(2, 1, 4), IndexOutOfRange);
    EXPECT_THROW(make_truncation(3), PreconditionViolated);
}

TEST(Operators, DilationBlocksForBaby) {
    const Matrix u = dilation_unitary(make_baby(4), 3);
    EXPECT_EQ(u.topLeftCorner(3, 3).norm(), 0.0);
    EXPECT_EQ(u.bottomRightCorner(3, 3).diagonal().real(), Eigen::Vector3d(1, 0, 0));
    // Column for e_0 in the first slot lands on i beta_1 e_1 in the second slot.
    EXPECT_EQ(u(3 + 1, 0), cplx(0.0, 1.0));
}

TEST(Operators, DilationMatchesVectorOracle) {
    const auto m = make_jaynes_cummings(0.7, 20);
    const int dim = 12;
    const Matrix u = dilation_unitary(m, dim);
    for (int n = 0; n + 1 < dim; ++n)
        for (int slot = 0; slot < 2; ++slot) {
            Vector expect = Vector::Zero(2 * dim);
            for (const auto& e : oracle::dilate(m, n, slot)) expect(e.slot * dim + e.level) += e.amp;
            EXPECT_LE((u.col(slot * dim + n) - expect).norm(), 1e-15) << "n=" << n << " slot=" << slot;
        }
}

TEST(Operators, DilationIsUnitaryAwayFromTheTop) {
    for (const auto& m : {make_baby(20), make_homogeneous(0.6, 0.8, 20), make_jaynes_cummings(0.7, 20)}) {
        const int dim = 12;
        const Matrix u = dilation_unitary(m, dim);
        const Matrix uu = u.adjoint() * u;
        for (int i = 0; i < 2 * dim; ++i)
            for (int j = 0; j < 2 * dim; ++j) {
                if (i % dim >= dim - 1 || j % dim >= dim - 1) continue;
                EXPECT_NEAR(std::abs(uu(i, j) - (i == j ? 1.0 : 0.0)), 0.0, 1e-15);
            }
    }
}

TEST(Operators, SliceMapForPoles) {
    std::mt19937_64 rng(3);
    const Matrix x = oracle::random_supported(rng, 8, 7);
    EXPECT_EQ(conditional_expectation_psi(x, psi_plus()), x.topLeftCorner(4, 4));
    EXPECT_EQ(conditional_expectation_psi(x, psi_minus()), x.bottomRightCorner(4, 4));
}

TEST(Operators, SliceMapOffDiagonalWeight) {
    Matrix x = Matrix::Zero(4, 4);
    x(0, 2) = cplx(2.0, 1.0);  // X_12 block entry (0, 0)
    const Matrix p = conditional_expectation_psi(x, qubit_state(0.5, 1.0));
    EXPECT_NEAR(std::abs(p(0, 0) - 0.5 * cplx(2.0, 1.0)), 0.0, 1e-15);
}

TEST(Operators, SliceMapOfProductIsStateValue) {
    std::mt19937_64 rng(5);
    const Matrix x = oracle::random_supported(rng, 5, 4);
    Eigen::Matrix2cd y;
    y << cplx(1, 2), cplx(0, -1), cplx(3, 0), cplx(-1, 1);
    const auto psi = qubit_state(0.3, cplx(0.4, 0.2));
    const cplx value = (oracle::density(0.3, cplx(0.4, 0.2)) * y).trace();
    EXPECT_LE(oracle::max_abs(conditional_expectation_psi(tensor_qubit(x, y), psi) - value * x), 1e-14);
    EXPECT_THROW(conditional_expectation_psi(Matrix::Zero(3, 3), psi), ShapeMismatch);
}

TEST(Operators, NumericHelpers) {
    Matrix x = Matrix::Zero(3, 3);
    x(0, 0) = 2.0;
    x(2, 1) = -3.0;
    EXPECT_EQ(max_abs(x), 3.0);
    EXPECT_EQ(max_abs_corner(x, 1), 2.0);
    EXPECT_EQ(max_abs_outside(x, 0, 1, 0, 1), 3.0);
    Matrix h = Matrix::Zero(2, 2);
    h(0, 0) = 1.0;
    h(1, 1) = -2.0;
    EXPECT_EQ(min_eigenvalue_hermitian(h), -2.0);
    EXPECT_NEAR(trace_norm_hermitian(h), 3.0, 1e-15);
    EXPECT_EQ(conditional_expectation_diag(x)(2, 1), cplx(0.0));
}
