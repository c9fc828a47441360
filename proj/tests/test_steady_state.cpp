#include <gtest/gtest.h>

#include "nimfa/dynamics.hpp"
#include "nimfa/error.hpp"
#include "nimfa/experiments.hpp"
#include "nimfa/steady_state.hpp"
#include "support.hpp"

using namespace nimfa;
using namespace nimfa::testing;

TEST(ClassifyRegime, Examples) {
    const RegimeInfo a = classify_regime(scalar_model(0.3, 0.6));
    EXPECT_EQ(a.regime, Regime::endemic);
    EXPECT_NEAR(a.rho_r, 1.3, 1e-12);
    const RegimeInfo b = classify_regime(scalar_model(0.5, 0.3));
    EXPECT_EQ(b.regime, Regime::die_out);
    EXPECT_NEAR(b.rho_r, 0.8, 1e-12);
}

TEST(ClassifyRegime, ThresholdBelongsToDieOut) {
    EXPECT_EQ(classify_regime(scalar_model(0.4, 0.4)).regime, Regime::die_out);
}

TEST(ClassifyRegime, ReducibleRejected) {
    Matrix w(2, 2);
    w << 0.0, 0.4, 0.0, 0.0;
    EXPECT_THROW(classify_regime(NetworkModel(vec({0.2, 0.2}), w)), PreconditionError);
}

TEST(SolveSteadyState, Scalar) {
    const SteadyState ss = solve_steady_state(scalar_model(0.3, 0.6));
    EXPECT_NEAR(ss.v_inf[0], 0.5, 1e-15);
    EXPECT_LE(ss.residual, 1e-12);
    EXPECT_GT(ss.iterations, 0u);
}

TEST(SolveSteadyState, SymmetricPair) {
    const SteadyState ss = solve_steady_state(symmetric_pair());
    EXPECT_NEAR(ss.v_inf[0], 0.5, 1e-14);
    EXPECT_NEAR(ss.v_inf[1], 0.5, 1e-14);
}

TEST(SolveSteadyState, NearThresholdScalar) {
    const SteadyState ss = solve_steady_state(scalar_model(0.4, 0.41));
    EXPECT_NEAR(ss.v_inf[0], 1.0 - 0.4 / 0.41, 1e-13);
}

TEST(SolveSteadyState, RegularGraphClosedForm) {
    // Directed 5-cycle plus chords: every row sums to 0.6, so v = 1 - q / 0.6.
    Matrix w = Matrix::Zero(5, 5);
    for (int i = 0; i < 5; ++i) {
        w(i, (i + 1) % 5) = 0.4;
        w(i, (i + 2) % 5) = 0.2;
    }
    const SteadyState ss = solve_steady_state(NetworkModel(Vector::Constant(5, 0.25), w));
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(ss.v_inf[i], 1.0 - 0.25 / 0.6, 1e-14);
}

TEST(SolveSteadyState, DieOutRejected) {
    EXPECT_THROW(solve_steady_state(scalar_model(0.5, 0.3)), PreconditionError);
}

TEST(SolveSteadyState, IterationBudgetExhausted) {
    SteadyStateOptions opts;
    opts.max_iter = 2;
    try {
        solve_steady_state(scalar_model(0.4, 0.41), opts);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        ASSERT_EQ(e.last_iterate().size(), 1);
        EXPECT_GT(e.last_iterate()[0], 1.0 - 0.4 / 0.41);
        EXPECT_GT(e.residual(), 0.0);
    }
}

TEST(SolveSteadyState, MatchesNewtonOracle) {
    const std::size_t sizes[] = {5, 10, 30};
    for (std::uint64_t s = 0; s < 15; ++s) {
        const Instance x = generate_instance(small_config(sizes[s % 3], 41), s);
        const Vector oracle = newton_steady_state(x.model);
        EXPECT_LE((x.ss.v_inf - oracle).lpNorm<Eigen::Infinity>(), 1e-12) << "instance " << s;
        EXPECT_LE(x.ss.residual, 1e-12);
        EXPECT_LE((step(x.model, x.ss.v_inf) - x.ss.v_inf).lpNorm<Eigen::Infinity>(), 1e-12);
        EXPECT_GT(x.ss.v_inf.minCoeff(), 0.0);
        EXPECT_LT(x.ss.v_inf.maxCoeff(), 1.0);
    }
}

TEST(Brackets, Examples) {
    const Brackets a = steady_state_brackets(scalar_model(0.2, 0.4));
    EXPECT_NEAR(a.lower[0], 0.5, 1e-15);
    EXPECT_NEAR(a.upper[0], 2.0 / 3.0, 1e-15);
    const Brackets b = steady_state_brackets(scalar_model(0.3, 0.6));
    EXPECT_NEAR(b.lower[0], 0.5, 1e-15);
    EXPECT_NEAR(b.upper[0], 2.0 / 3.0, 1e-15);
    const Brackets c = steady_state_brackets(scalar_model(0.3, 0.3));
    EXPECT_EQ(c.lower[0], 0.0);
    EXPECT_NEAR(c.upper[0], 0.5, 1e-15);
}

TEST(Brackets, ZeroRowRejected) {
    Matrix w(2, 2);
    w << 0.0, 0.4, 0.0, 0.0;
    EXPECT_THROW(steady_state_brackets(NetworkModel(vec({0.2, 0.2}), w)), DomainError);
}

TEST(Brackets, EncloseSteadyState) {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const Instance x = generate_instance(small_config(10, 43), s);
        EXPECT_TRUE((x.ss.lower.array() <= x.ss.v_inf.array()).all());
        EXPECT_TRUE((x.ss.v_inf.array() <= x.ss.upper.array()).all());
    }
}

TEST(Brackets, NodewiseLowerValueIsNotABound) {
    // Node 0 has a strong link from node 1, but node 1 is barely infected,
    // so v_inf_0 = 1/3 sits below 1 - q_0 / sum_j w_0j = 0.5.
    Matrix w(2, 2);
    w << 0.0, 0.4, 0.005, 0.0;
    const NetworkModel m(vec({0.2, 0.005}), w);
    ASSERT_TRUE(validate(m).all_hold());
    const SteadyState ss = solve_steady_state(m);
    EXPECT_NEAR(ss.v_inf[0], 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(ss.v_inf[1], 0.25, 1e-12);
    EXPECT_LT(ss.v_inf[0], 1.0 - 0.2 / 0.4);
    EXPECT_LE(ss.lower[0], ss.v_inf[0]);
    EXPECT_LE(ss.lower[1], ss.v_inf[1]);
}

TEST(Residual, ZeroAtFixedPoint) {
    EXPECT_NEAR(steady_state_residual(symmetric_pair(), vec({0.5, 0.5})), 0.0, 1e-15);
    EXPECT_NEAR(steady_state_residual(symmetric_pair(), vec({0.25, 0.25})), 0.4 * 0.25 - 0.2 / 3.0, 1e-15);
}

TEST(StabilityCertificate, SymmetricPair) {
    const StabilityCertificate c = stability_certificate(symmetric_pair(), solve_steady_state(symmetric_pair()));
    EXPECT_NEAR(c.rho_f, 0.8, 1e-12);
    EXPECT_NEAR(c.analytic_bound, 0.8, 1e-12);
}

TEST(StabilityCertificate, Scalar) {
    const NetworkModel m = scalar_model(0.3, 0.6);
    const StabilityCertificate c = stability_certificate(m, solve_steady_state(m));
    EXPECT_NEAR(c.rho_f, 0.7, 1e-12);
    EXPECT_NEAR(c.analytic_bound, 0.7, 1e-12);
}

TEST(StabilityCertificate, BelowOneOnGeneratedInstances) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Instance x = generate_instance(small_config(10, 47), s);
        const StabilityCertificate c = stability_certificate(x.model, x.ss);
        EXPECT_LT(c.rho_f, 1.0);
        EXPECT_LE(c.rho_f, c.analytic_bound + 1e-9);
    }
}

TEST(StabilityCertificate, WrongSteadyStateFails) {
    const NetworkModel m = scalar_model(0.3, 0.6);
    SteadyState fake;
    fake.v_inf = vec({0.01});
    EXPECT_THROW(stability_certificate(m, fake), CertificateFailure);
}
