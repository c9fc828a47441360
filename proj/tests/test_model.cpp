#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "nimfa/error.hpp"
#include "nimfa/model.hpp"
#include "support.hpp"

using namespace nimfa;
using namespace nimfa::testing;

namespace {

Matrix mat2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST(ContinuousParams, RejectsInvalidRates) {
    EXPECT_THROW(ContinuousParams(Matrix::Zero(1, 1), vec({0.0}), 0.1), InvalidParameter);
    EXPECT_THROW(ContinuousParams(Matrix::Constant(1, 1, -1.0), vec({1.0}), 0.1), InvalidParameter);
    EXPECT_THROW(ContinuousParams(Matrix::Zero(1, 1), vec({1.0}), 0.0), InvalidParameter);
    EXPECT_THROW(ContinuousParams(Matrix::Zero(2, 2), vec({1.0}), 0.1), InvalidParameter);
    EXPECT_THROW(ContinuousParams(Matrix::Constant(1, 1, std::nan("")), vec({1.0}), 0.1),
                 InvalidParameter);
    EXPECT_THROW(ContinuousParams(Matrix(0, 0), Vector(0), 0.1), InvalidParameter);
}

TEST(NetworkModel, RejectsStructuralErrors) {
    EXPECT_THROW(NetworkModel(Vector(0), Matrix(0, 0)), InvalidParameter);
    EXPECT_THROW(NetworkModel(vec({0.1, 0.2}), Matrix::Zero(2, 3)), InvalidParameter);
    EXPECT_THROW(NetworkModel(vec({0.1}), Matrix::Zero(2, 2)), InvalidParameter);
    EXPECT_THROW(NetworkModel(vec({std::numeric_limits<double>::infinity()}), Matrix::Zero(1, 1)),
                 InvalidParameter);
}

TEST(Discretize, ScalarMultiplication) {
    const NetworkModel m = discretize(ContinuousParams(Matrix::Constant(1, 1, 7.0), vec({3.0}), 0.1));
    EXPECT_NEAR(m.q()[0], 0.3, 1e-15);
    EXPECT_NEAR(m.w()(0, 0), 0.7, 1e-15);
    ASSERT_TRUE(m.source().has_value());
    EXPECT_DOUBLE_EQ(m.source()->t(), 0.1);
}

TEST(Discretize, ZeroInfectionGivesZeroW) {
    const NetworkModel m = discretize(ContinuousParams(Matrix::Zero(3, 3), vec({1.0, 2.0, 3.0}), 0.2));
    EXPECT_EQ(m.w().cwiseAbs().maxCoeff(), 0.0);
    EXPECT_FALSE(validate(m).a4_irreducible);
}

TEST(Discretize, TwoNodeCycle) {
    const NetworkModel m = discretize(ContinuousParams(mat2(0, 4, 4, 0), vec({2.0, 2.0}), 0.1));
    EXPECT_NEAR(m.q()[0], 0.2, 1e-15);
    EXPECT_NEAR(m.q()[1], 0.2, 1e-15);
    EXPECT_TRUE(m.w().isApprox(mat2(0, 0.4, 0.4, 0), 1e-15));
}

TEST(MaxSamplingTime, Examples) {
    const SamplingBound a = max_sampling_time(ContinuousParams(Matrix::Constant(1, 1, 7.0), vec({3.0}), 1.0));
    EXPECT_NEAR(a.per_node[0], 0.1, 1e-15);
    EXPECT_NEAR(a.global, 0.1, 1e-15);

    const SamplingBound b = max_sampling_time(ContinuousParams(Matrix::Zero(1, 1), vec({1.0}), 1.0));
    EXPECT_DOUBLE_EQ(b.per_node[0], 1.0);

    const SamplingBound c = max_sampling_time(ContinuousParams(mat2(0, 4, 4, 0), vec({2.0, 2.0}), 1.0));
    EXPECT_NEAR(c.per_node[0], 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(c.per_node[1], 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(c.global, 1.0 / 6.0, 1e-15);
}

TEST(Validate, ScalarEndemicModelPassesAll) {
    const AssumptionReport r = validate(scalar_model(0.3, 0.6));
    EXPECT_TRUE(r.a1_rates);
    EXPECT_TRUE(r.a2_sampling);
    EXPECT_TRUE(r.a4_irreducible);
    EXPECT_TRUE(r.a5_above_threshold);
    EXPECT_NEAR(r.rho_r, 1.3, 1e-12);
    EXPECT_FALSE(r.a3_initial.has_value());
    EXPECT_TRUE(r.all_hold());
}

TEST(Validate, ScalarBelowThresholdFailsA5) {
    const AssumptionReport r = validate(scalar_model(0.5, 0.3));
    EXPECT_FALSE(r.a5_above_threshold);
    EXPECT_NEAR(r.rho_r, 0.8, 1e-12);
    EXPECT_FALSE(r.all_hold());
}

TEST(Validate, ThresholdItselfFailsA5) {
    EXPECT_FALSE(validate(scalar_model(0.4, 0.4)).a5_above_threshold);
}

TEST(Validate, OneWayEdgeFailsA4) {
    const AssumptionReport r = validate(NetworkModel(vec({0.2, 0.2}), mat2(0, 0.4, 0, 0)));
    EXPECT_FALSE(r.a4_irreducible);
    EXPECT_FALSE(r.all_hold());
}

TEST(Validate, SamplingViolationNamesNode) {
    const AssumptionReport r = validate(NetworkModel(vec({0.2, 0.7}), mat2(0, 0.4, 0.4, 0)));
    EXPECT_FALSE(r.a2_sampling);
    ASSERT_EQ(r.a2_violations.size(), 1u);
    EXPECT_EQ(r.a2_violations[0], 1u);
}

TEST(Validate, SamplingEqualityAdmitted) {
    EXPECT_TRUE(validate(scalar_model(0.4, 0.6)).a2_sampling);
}

TEST(Validate, NonPositiveCuringFailsA1) {
    EXPECT_FALSE(validate(NetworkModel(vec({0.0, 0.2}), mat2(0, 0.4, 0.4, 0))).a1_rates);
    EXPECT_FALSE(validate(NetworkModel(vec({0.2, 0.2}), mat2(0, -0.4, 0.4, 0))).a1_rates);
}

TEST(Validate, InitialStateAgainstSteadyState) {
    const NetworkModel m = symmetric_pair();
    const Vector v_inf = vec({0.5, 0.5});
    EXPECT_TRUE(*validate(m, vec({0.1, 0.5}), v_inf).a3_initial);
    EXPECT_FALSE(*validate(m, vec({0.1, 0.6}), v_inf).a3_initial);
    EXPECT_FALSE(*validate(m, vec({-0.1, 0.2}), v_inf).a3_initial);
    EXPECT_FALSE(validate(m, vec({0.1, 0.6}), v_inf).all_hold());
    EXPECT_THROW(validate(m, vec({0.1}), v_inf), InvalidParameter);
}

TEST(Validate, ContinuousSourceReportsTMax) {
    const NetworkModel m = discretize(ContinuousParams(mat2(0, 4, 4, 0), vec({2.0, 2.0}), 0.1));
    const AssumptionReport r = validate(m);
    ASSERT_TRUE(r.t_max_global.has_value());
    EXPECT_NEAR(*r.t_max_global, 1.0 / 6.0, 1e-15);
}

TEST(BuildR, Examples) {
    EXPECT_TRUE(build_R(symmetric_pair()).isApprox(mat2(0.8, 0.4, 0.4, 0.8), 1e-15));
    EXPECT_EQ(build_R(scalar_model(1.0, 0.0))(0, 0), 0.0);
    EXPECT_NEAR(build_R(scalar_model(0.3, 0.6))(0, 0), 1.3, 1e-15);
}
