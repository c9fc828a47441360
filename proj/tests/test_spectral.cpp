#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "nimfa/error.hpp"
#include "nimfa/spectral.hpp"
#include "support.hpp"

using namespace nimfa;
using namespace nimfa::testing;

namespace {

Matrix mat2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

Matrix random_positive(std::mt19937_64& gen, Eigen::Index n, double zero_prob) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = u(gen) < zero_prob ? 0.0 : u(gen);
    return m;
}

double eigen_max_modulus(const Matrix& m) {
    return Eigen::EigenSolver<Matrix>(m, false).eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

TEST(StronglyConnected, Examples) {
    EXPECT_TRUE(strongly_connected(mat2(0, 0.4, 0.4, 0)));
    EXPECT_FALSE(strongly_connected(mat2(0, 0.4, 0, 0)));
    EXPECT_TRUE(strongly_connected(Matrix::Constant(1, 1, 0.5)));
    EXPECT_TRUE(strongly_connected(Matrix::Zero(1, 1)));
}

TEST(StronglyConnected, DirectedCycleAndBrokenCycle) {
    Matrix w = Matrix::Zero(4, 4);
    w(1, 0) = w(2, 1) = w(3, 2) = w(0, 3) = 1.0;
    EXPECT_TRUE(strongly_connected(w));
    w(0, 3) = 0.0;
    EXPECT_FALSE(strongly_connected(w));
    w(3, 0) = 1.0;  // back edge 0 -> 3 does not close the cycle 3 -> 0
    EXPECT_FALSE(strongly_connected(w));
}

TEST(StronglyConnected, DisjointComponents) {
    Matrix w = Matrix::Zero(4, 4);
    w(0, 1) = w(1, 0) = w(2, 3) = w(3, 2) = 1.0;
    EXPECT_FALSE(strongly_connected(w));
}

TEST(PrincipalRadius, SymmetricPair) {
    const SpectralInfo s = spectral_radius_principal(mat2(0.8, 0.4, 0.4, 0.8));
    EXPECT_NEAR(s.rho, 1.2, 1e-12);
    EXPECT_NEAR(s.x1[0], 1.0 / std::sqrt(2.0), 1e-10);
    EXPECT_NEAR(s.x1[1], 1.0 / std::sqrt(2.0), 1e-10);
}

TEST(PrincipalRadius, Scalar) {
    const SpectralInfo s = spectral_radius_principal(Matrix::Constant(1, 1, 1.3));
    EXPECT_NEAR(s.rho, 1.3, 1e-15);
    EXPECT_NEAR(s.x1[0], 1.0, 1e-15);
}

TEST(PrincipalRadius, QuadraticFormulaOracle) {
    const Matrix m = mat2(0.7, 0.2, 0.3, 0.6);
    const double oracle = largest_quadratic_root(-1.3, 0.36);
    EXPECT_NEAR(oracle, 0.9, 1e-15);
    EXPECT_NEAR(spectral_radius_principal(m).rho, oracle, 1e-12);
}

TEST(PrincipalRadius, PeriodicMatrixUsesShift) {
    // Eigenvalues +-1: plain power iteration from the all-one vector would
    // still converge here, but on the 3-cycle it would not.
    Matrix c = Matrix::Zero(3, 3);
    c(1, 0) = c(2, 1) = c(0, 2) = 2.0;
    const SpectralInfo s = spectral_radius_principal(c);
    EXPECT_NEAR(s.rho, 2.0, 1e-12);
    EXPECT_NEAR(spectral_radius_principal(mat2(0, 1, 1, 0)).rho, 1.0, 1e-12);
}

TEST(PrincipalRadius, CharacteristicPolynomialOracleSmall) {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index n = 1 + trial % 3;
        Matrix m = random_positive(gen, n, 0.2);
        if (!strongly_connected(m)) continue;
        const double oracle = perron_root_charpoly(m);
        EXPECT_NEAR(spectral_radius_principal(m).rho, oracle, 1e-10 * std::max(1.0, oracle))
            << "trial " << trial;
    }
}

TEST(PrincipalRadius, AgreesWithDenseEigensolver) {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix m = random_positive(gen, 30, 0.8);
        if (!strongly_connected(m)) continue;
        const SpectralInfo s = spectral_radius_principal(m);
        EXPECT_NEAR(s.rho, eigen_max_modulus(m), 1e-9 * s.rho);
        EXPECT_GT(s.x1.minCoeff(), 0.0);
        EXPECT_NEAR(s.x1.norm(), 1.0, 1e-12);
        EXPECT_LE((m * s.x1 - s.rho * s.x1).norm(), 1e-10 * std::max(1.0, s.rho));
    }
}

TEST(PrincipalRadius, CollatzWielandtBracketsTheRoot) {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix m = random_positive(gen, 8, 0.3);
        if (!strongly_connected(m)) continue;
        const double rho = spectral_radius_principal(m).rho;
        EXPECT_GE(collatz_wielandt_bound(m, Vector::Ones(8)) + 1e-12, rho);
        EXPECT_LE(m.rowwise().sum().minCoeff(), rho + 1e-12);
    }
}

TEST(PrincipalRadius, ConvergenceErrorCarriesIterate) {
    PowerIterationOptions opts;
    opts.max_iter = 1;
    Matrix m(2, 2);
    m << 1.0, 0.5, 0.1, 0.2;
    try {
        spectral_radius_principal(m, opts);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_EQ(e.last_iterate().size(), 2);
    }
}

TEST(PrincipalRadius, RejectsNonSquare) {
    EXPECT_THROW(spectral_radius_principal(Matrix::Zero(2, 3)), InvalidParameter);
}

TEST(MagnitudeRadius, MixedSignMatrices) {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix m(6, 6);
        for (auto& x : m.reshaped()) x = g(gen);
        EXPECT_NEAR(spectral_radius_magnitude(m), eigen_max_modulus(m), 1e-6 * eigen_max_modulus(m));
    }
}

TEST(MagnitudeRadius, RotationHasComplexDominantPair) {
    const double c = std::cos(0.3);
    const double s = std::sin(0.3);
    EXPECT_NEAR(spectral_radius_magnitude(0.9 * mat2(c, -s, s, c)), 0.9, 1e-8);
}

TEST(MagnitudeRadius, OppositeSignPair) {
    EXPECT_NEAR(spectral_radius_magnitude(mat2(0.5, 0.0, 0.0, -0.5)), 0.5, 1e-8);
}

TEST(InfNorm, Examples) {
    EXPECT_DOUBLE_EQ(inf_norm(mat2(1, -2, 0, 3)), 3.0);
    EXPECT_DOUBLE_EQ(inf_norm(Matrix::Identity(5, 5)), 1.0);
    EXPECT_DOUBLE_EQ(inf_norm(Matrix::Zero(4, 4)), 0.0);
}

TEST(InfNorm, BoundsSpectralRadius) {
    std::mt19937_64 gen(9);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix m = random_positive(gen, 10, 0.5);
        EXPECT_LE(eigen_max_modulus(m), inf_norm(m) + 1e-12);
    }
}

TEST(CollatzWielandt, RejectsNonPositiveVector) {
    EXPECT_THROW(collatz_wielandt_bound(Matrix::Identity(2, 2), vec({1.0, 0.0})), DomainError);
}
