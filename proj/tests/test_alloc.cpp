#include "pmlr/alloc.hpp"
#include "pmlr/errors.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace pmlr::alloc {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

Vec v1(double a) { return Vec::Constant(1, a); }

Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

Mat row2(double a, double b) {
    Mat m(1, 2);
    m << a, b;
    return m;
}

EffectorLimits one_surface(double lo, double hi, double rate) {
    return {v1(lo), v1(hi), v1(rate)};
}

TEST(IncrementLimits, RateBoundActive) {
    const auto b = increment_limits(one_surface(-30 * kDeg, 30 * kDeg, 50 * kDeg), v1(25 * kDeg), 0.01);
    EXPECT_NEAR(b.upper[0], 0.5 * kDeg, 1e-15);
    EXPECT_NEAR(b.lower[0], -0.5 * kDeg, 1e-15);
}

TEST(IncrementLimits, PositionBoundActive) {
    const auto b = increment_limits(one_surface(-0.5, 0.5, 1.0), v1(-0.5), 0.01);
    EXPECT_EQ(b.lower[0], 0.0);
    EXPECT_DOUBLE_EQ(b.upper[0], 0.01);
}

TEST(IncrementLimits, HugeRateGivesPositionMargins) {
    const auto b = increment_limits(one_surface(-0.4, 0.6, 1e9), v1(0.1), 0.01);
    EXPECT_DOUBLE_EQ(b.upper[0], 0.5);
    EXPECT_DOUBLE_EQ(b.lower[0], -0.5);
}

TEST(IncrementLimits, OutsidePositionLimitsDrivesBack) {
    // 0.2 above the limit with a 0.1 rate step: the only admissible move is −0.1.
    const auto b = increment_limits(one_surface(-0.5, 0.5, 10.0), v1(0.7), 0.01);
    EXPECT_DOUBLE_EQ(b.upper[0], -0.1);
    EXPECT_DOUBLE_EQ(b.lower[0], -0.1);

    const auto near = increment_limits(one_surface(-0.5, 0.5, 10.0), v1(0.55), 0.01);
    EXPECT_DOUBLE_EQ(near.lower[0], -0.1);
    EXPECT_NEAR(near.upper[0], -0.05, 1e-15);
}

TEST(IncrementLimits, Validation) {
    EXPECT_THROW(increment_limits(one_surface(-1, 1, 1), v1(0), 0.0), FormatError);
    EXPECT_THROW(increment_limits(one_surface(-1, 1, 1), v2(0, 0), 0.01), DimensionError);
    EXPECT_THROW(one_surface(1, -1, 1).validate(), FormatError);
    EXPECT_THROW(one_surface(-1, 1, 0).validate(), FormatError);
    EXPECT_NO_THROW(one_surface(-1, 1, 1).validate());
}

TEST(IncrementalDemand, Examples) {
    Vec t(3);
    t << 1, 0, 0;
    Vec g0(3);
    g0 << 0.2, 0, 0;
    EXPECT_TRUE(incremental_demand(t, g0).isApprox(Vec::Unit(3, 0) * 0.8));
    EXPECT_EQ(incremental_demand(t, t), Vec::Zero(3));
    EXPECT_EQ(incremental_demand(t, Vec::Zero(3)), t);
    EXPECT_THROW(incremental_demand(t, Vec::Zero(2)), DimensionError);
}

TEST(WeightedPinv, Examples) {
    EXPECT_TRUE(weighted_pinv(row2(1, 1), Mat::Identity(2, 2)).isApprox(v2(0.5, 0.5), 1e-15));
    Mat w = Mat::Zero(2, 2);
    w.diagonal() << 1, 4;
    EXPECT_TRUE(weighted_pinv(row2(1, 1), w).isApprox(v2(0.8, 0.2), 1e-15));

    oracle::Random rng(41);
    const Mat spd = rng.spd(3);
    EXPECT_LE((weighted_pinv(Mat::Identity(3, 3), spd) - Mat::Identity(3, 3)).cwiseAbs().maxCoeff(),
              1e-12);
}

TEST(WeightedPinv, RankDeficiency) {
    Mat g(2, 3);
    g << 1, 2, 3, 2, 4, 6;
    EXPECT_THROW(weighted_pinv(g, Mat::Identity(3, 3)), RankDeficiencyError);
    EXPECT_THROW(weighted_pinv(row2(1, 1), -Mat::Identity(2, 2)), RankDeficiencyError);
}

TEST(WeightedPinv, RightInverseAndMinimumNorm) {
    oracle::Random rng(42);
    for (int t = 0; t < 300; ++t) {
        const int d = rng.integer(1, 3);
        const int kappa = rng.integer(d, 10);
        const Mat g = rng.matrix(d, kappa);
        const Mat w = rng.spd(kappa);
        const Mat pinv = weighted_pinv(g, w);
        EXPECT_LE((g * pinv - Mat::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-10);

        const Vec v = rng.vector(d);
        const Vec x = pinv * v;
        const Vec x_ref = oracle::equality_qp(g, w, Vec::Zero(kappa), v);
        const double cost = x.dot(w * x);
        const double cost_ref = x_ref.dot(w * x_ref);
        EXPECT_LE(std::abs(cost - cost_ref), 1e-8 * std::max(1.0, cost_ref));
    }
}

TEST(Rpi, UnconstrainedExample) {
    const auto p = AllocationProblem::with_defaults(row2(1, 1), v1(2), v2(-5, -5), v2(5, 5));
    const auto r = rpi_allocate(p);
    EXPECT_TRUE(r.delta_increment.isApprox(v2(1, 1), 1e-15));
    EXPECT_EQ(r.iterations, 1);
    EXPECT_FALSE(r.saturated[0] || r.saturated[1]);
    EXPECT_NEAR(r.residual(p.delta_t_dem)[0], 0.0, 1e-15);
}

TEST(Rpi, RedistributionExample) {
    const auto p = AllocationProblem::with_defaults(row2(1, 1), v1(2), v2(-5, -5), v2(0.5, 2));
    const auto r = rpi_allocate(p);
    EXPECT_NEAR(r.delta_increment[0], 0.5, 1e-15);
    EXPECT_NEAR(r.delta_increment[1], 1.5, 1e-15);
    EXPECT_EQ(r.iterations, 2);
    EXPECT_TRUE(r.saturated[0]);
    EXPECT_FALSE(r.saturated[1]);
}

TEST(Rpi, ZeroDemand) {
    const auto p = AllocationProblem::with_defaults(row2(1, 1), v1(0), v2(-1, -1), v2(1, 1));
    const auto r = rpi_allocate(p);
    EXPECT_EQ(r.delta_increment, Vec::Zero(2));
    EXPECT_EQ(r.iterations, 1);
}

TEST(Rpi, InfeasibleDemandIsBestEffort) {
    const auto p = AllocationProblem::with_defaults(row2(1, 1), v1(10), v2(-1, -1), v2(1, 1));
    AllocationResult r;
    ASSERT_NO_THROW(r = rpi_allocate(p));
    EXPECT_EQ(r.delta_increment, v2(1, 1));
    EXPECT_DOUBLE_EQ(r.residual(p.delta_t_dem)[0], 8.0);
}

TEST(Rpi, BoundsExcludingZero) {
    // Effector 0 sits above its position limit and must move down by at least 0.1.
    const auto p = AllocationProblem::with_defaults(row2(1, 1), v1(0), v2(-0.3, -1), v2(-0.1, 1));
    const auto r = rpi_allocate(p);
    EXPECT_DOUBLE_EQ(r.delta_increment[0], -0.1);
    EXPECT_NEAR(r.delta_increment[1], 0.1, 1e-15);
    EXPECT_NEAR(r.achieved[0], 0.0, 1e-15);
}

TEST(Rpi, RankDeficientFreeSetFallsBackToRidge) {
    // After effector 0 saturates, the remaining columns cannot produce axis 1.
    Mat g(2, 3);
    g << 1, 1, 1, 1, 0, 0;
    const AllocationProblem p = AllocationProblem::with_defaults(
        g, v2(1, 3), -Vec::Ones(3), Vec::Ones(3));
    AllocationResult r;
    ASSERT_NO_THROW(r = rpi_allocate(p));
    EXPECT_TRUE(r.delta_increment.allFinite());
    EXPECT_TRUE(r.saturated[0]);
    EXPECT_TRUE((r.delta_increment.array() <= 1.0).all());
    EXPECT_TRUE((r.delta_increment.array() >= -1.0).all());
}

TEST(Rpi, PreferenceConsistency) {
    oracle::Random rng(43);
    for (int t = 0; t < 200; ++t) {
        const int d = rng.integer(1, 3);
        const int kappa = rng.integer(d, 10);
        auto p = AllocationProblem::with_defaults(rng.matrix(d, kappa), Vec::Zero(d),
                                                  -Vec::Ones(kappa), Vec::Ones(kappa));
        p.weights = rng.spd(kappa);
        p.preference = rng.vector(kappa, -0.9, 0.9);
        p.delta_t_dem = p.g_matrix * p.preference;
        const auto r = rpi_allocate(p);
        EXPECT_LE((r.delta_increment - p.preference).cwiseAbs().maxCoeff(), 1e-10);
    }
}

class RpiRandom : public ::testing::Test {
protected:
    AllocationProblem random_problem(double bound) {
        const int d = rng.integer(1, 3);
        const int kappa = rng.integer(d, 10);
        auto p = AllocationProblem::with_defaults(rng.matrix(d, kappa), rng.vector(d),
                                                  rng.vector(kappa, -bound, 0.0),
                                                  rng.vector(kappa, 0.0, bound));
        p.weights = rng.spd(kappa);
        return p;
    }
    oracle::Random rng{44};
};

TEST_F(RpiRandom, FeasibleExactnessAndOptimality) {
    int checked = 0;
    for (int t = 0; t < 500; ++t) {
        auto p = random_problem(1e6);
        const auto r = rpi_allocate(p);
        const Vec x_ref = oracle::equality_qp(p.g_matrix, p.weights, p.preference, p.delta_t_dem);
        EXPECT_LE((r.achieved - p.delta_t_dem).cwiseAbs().maxCoeff(), 1e-9);
        const double cost = r.delta_increment.dot(p.weights * r.delta_increment);
        const double cost_ref = x_ref.dot(p.weights * x_ref);
        EXPECT_LE(std::abs(cost - cost_ref), 1e-8 * std::max(1.0, cost_ref));
        ++checked;
    }
    EXPECT_EQ(checked, 500);
}

TEST_F(RpiRandom, BoundSafetyAndMonotoneFreeSet) {
    for (int t = 0; t < 500; ++t) {
        const auto p = random_problem(0.3);
        const auto r = rpi_allocate(p);
        const auto kappa = p.g_matrix.cols();
        for (Eigen::Index i = 0; i < kappa; ++i) {
            EXPECT_GE(r.delta_increment[i], p.lower[i]);
            EXPECT_LE(r.delta_increment[i], p.upper[i]);
            if (r.saturated[static_cast<std::size_t>(i)]) {
                EXPECT_TRUE(r.delta_increment[i] == p.lower[i] ||
                            r.delta_increment[i] == p.upper[i]);
            }
        }
        // Each pass after the first freezes at least one more effector.
        int saturated = 0;
        for (const bool s : r.saturated) {
            saturated += s ? 1 : 0;
        }
        EXPECT_LE(r.iterations, std::max<Eigen::Index>(1, kappa));
        EXPECT_LE(r.iterations - 1, saturated);
        EXPECT_TRUE(r.achieved.isApprox(p.g_matrix * r.delta_increment));
    }
}

TEST(ApplyIncrement, Examples) {
    AllocationResult r;
    r.delta_increment = v2(1, -1);
    EXPECT_EQ(apply_increment(Vec::Zero(2), r), v2(1, -1));
    r.delta_increment = Vec::Zero(2);
    EXPECT_EQ(apply_increment(v2(0.3, 0.4), r), v2(0.3, 0.4));
    EXPECT_THROW(apply_increment(Vec::Zero(3), r), DimensionError);
}

TEST(ApplyIncrement, StaysWithinLimitsWhenComposedWithIncrementLimits) {
    const auto limits = one_surface(-30 * kDeg, 30 * kDeg, 50 * kDeg);
    const Vec d0 = v1(25 * kDeg);
    const auto b = increment_limits(limits, d0, 0.01);
    const auto p = AllocationProblem::with_defaults(Mat::Ones(1, 1), v1(10.0), b.lower, b.upper);
    const Vec d1 = apply_increment(d0, rpi_allocate(p));
    EXPECT_NEAR(d1[0], 25.5 * kDeg, 1e-15);
    EXPECT_LE(d1[0], 30 * kDeg);
}

}  // namespace
}  // namespace pmlr::alloc
