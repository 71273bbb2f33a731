#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "biotraj/error.hpp"
#include "biotraj/trajectory.hpp"

using namespace biotraj;

namespace {

// Textbook closed form for the general quintic (local time).
std::array<double, 6> closed_form(const BoundaryCondition& a, const BoundaryCondition& b, double T)
{
    const double h = b.theta - a.theta;
    return {a.theta,
            a.omega,
            a.alpha / 2,
            (20 * h - (8 * b.omega + 12 * a.omega) * T - (3 * a.alpha - b.alpha) * T * T) / (2 * T * T * T),
            (-30 * h + (14 * b.omega + 16 * a.omega) * T + (3 * a.alpha - 2 * b.alpha) * T * T) / (2 * std::pow(T, 4)),
            (12 * h - 6 * (b.omega + a.omega) * T + (b.alpha - a.alpha) * T * T) / (2 * std::pow(T, 5))};
}

}  // namespace

TEST(SolveQuintic, CanonicalRestToRest)
{
    const auto seg = solve_quintic({0, 0, 0}, {1, 0, 0}, 0.0, 1.0);
    const std::array<double, 6> expected{0, 0, 0, 10, -15, 6};
    for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(seg.d[i], expected[i], 1e-12) << "d" << i;
}

TEST(SolveQuintic, ConstantTrajectory)
{
    const auto seg = solve_quintic({0.7, 0, 0}, {0.7, 0, 0}, 2.0, 5.0);
    EXPECT_NEAR(seg.d[0], 0.7, 1e-15);
    for (std::size_t i = 1; i < 6; ++i) EXPECT_NEAR(seg.d[i], 0.0, 1e-15);
}

TEST(SolveQuintic, RestToRestMidpointSymmetry)
{
    const auto seg = solve_quintic({0.2, 0, 0}, {1.4, 0, 0}, 1.0, 3.5);
    EXPECT_NEAR(eval(seg, 2.25).theta, 0.8, 1e-12);
}

TEST(SolveQuintic, AgreesWithClosedFormAndHitsBoundaries)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> val(-3.0, 3.0), dur(0.1, 10.0), start(-5.0, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const BoundaryCondition a{val(rng), val(rng), val(rng)};
        const BoundaryCondition b{val(rng), val(rng), val(rng)};
        const double t0 = start(rng);
        const double T = dur(rng);
        const auto seg = solve_quintic(a, b, t0, t0 + T);
        const auto ref = closed_form(a, b, T);
        for (std::size_t k = 0; k < 6; ++k) {
            EXPECT_NEAR(seg.d[k], ref[k], 1e-8 * std::max(1.0, std::abs(ref[k])));
        }
        const auto s0 = eval(seg, seg.t0);
        const auto sf = eval(seg, seg.tf);
        EXPECT_LT(std::abs(s0.theta - a.theta), 1e-9);
        EXPECT_LT(std::abs(s0.omega - a.omega), 1e-9);
        EXPECT_LT(std::abs(s0.alpha - a.alpha), 1e-9);
        EXPECT_LT(std::abs(sf.theta - b.theta), 1e-9);
        EXPECT_LT(std::abs(sf.omega - b.omega), 1e-9);
        EXPECT_LT(std::abs(sf.alpha - b.alpha), 1e-9);
    }
}

TEST(SolveQuintic, RejectsBadInput)
{
    EXPECT_THROW(solve_quintic({}, {1, 0, 0}, 1.0, 1.0), Error);
    EXPECT_THROW(solve_quintic({}, {1, 0, 0}, 2.0, 1.0), Error);
    EXPECT_THROW(solve_quintic({NAN, 0, 0}, {1, 0, 0}, 0.0, 1.0), Error);
}

TEST(Eval, CanonicalMidpoint)
{
    const auto seg = solve_quintic({0, 0, 0}, {1, 0, 0}, 0.0, 1.0);
    const auto k = eval(seg, 0.5);
    EXPECT_NEAR(k.theta, 0.5, 1e-15);
    // 30 s^2 (1-s)^2 at s = 1/2
    EXPECT_NEAR(k.omega, 30.0 * 0.25 * 0.25, 1e-14);
    EXPECT_NEAR(k.alpha, 0.0, 1e-13);
}

TEST(Eval, MidpointVelocityScalesWithDisplacementAndDuration)
{
    const double dtheta = 2.6, T = 3.0;
    const auto seg = solve_quintic({0.1, 0, 0}, {0.1 + dtheta, 0, 0}, 0.0, T);
    EXPECT_NEAR(eval(seg, T / 2).omega, 1.875 * dtheta / T, 1e-12);
}

TEST(Eval, EndpointsReproduceBoundaryConditions)
{
    const BoundaryCondition a{0.3, -0.2, 1.1}, b{-0.4, 0.5, -2.0};
    const auto seg = solve_quintic(a, b, 0.5, 2.0);
    const auto k0 = eval(seg, 0.5);
    EXPECT_NEAR(k0.theta, a.theta, 1e-12);
    EXPECT_NEAR(k0.omega, a.omega, 1e-12);
    EXPECT_NEAR(k0.alpha, a.alpha, 1e-12);
    const auto kf = eval(seg, 2.0);
    EXPECT_NEAR(kf.theta, b.theta, 1e-12);
    EXPECT_NEAR(kf.omega, b.omega, 1e-12);
    EXPECT_NEAR(kf.alpha, b.alpha, 1e-12);
}

TEST(Eval, RejectsOutOfSpan)
{
    const auto seg = solve_quintic({0, 0, 0}, {1, 0, 0}, 0.0, 1.0);
    try {
        eval(seg, 1.01);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::out_of_span);
    }
    EXPECT_THROW(eval(seg, -0.01), Error);
}

TEST(TwoSegmentVia, SplittingAtTheExactStateIsIdentity)
{
    const double T = 2.0;
    const auto single = solve_quintic({0.1, 0, 0}, {1.6, 0, 0}, 0.0, T);
    const double tv = 0.5 * T;
    const auto m = eval(single, tv);
    const auto path = two_segment_via({0.1, 0, 0}, {m.theta, m.omega, m.alpha}, tv, {1.6, 0, 0}, T);
    for (int i = 0; i <= 400; ++i) {
        const double t = T * i / 400.0;
        const auto a = eval(single, t);
        const auto b = path.eval(t);
        EXPECT_NEAR(a.theta, b.theta, 1e-9);
        EXPECT_NEAR(a.omega, b.omega, 1e-9);
        EXPECT_NEAR(a.alpha, b.alpha, 1e-9);
    }
}

TEST(TwoSegmentVia, JunctionIsC2)
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> val(-2.0, 2.0), frac(0.1, 0.9);
    for (int i = 0; i < 200; ++i) {
        const double T = 3.0;
        const double tv = frac(rng) * T;
        const BoundaryCondition via{val(rng), val(rng), val(rng)};
        const auto path = two_segment_via({val(rng), 0, 0}, via, tv, {val(rng), 0, 0}, T);
        const auto& segs = path.segments();
        ASSERT_EQ(segs.size(), 2u);
        const auto left = eval(segs[0], tv);
        const auto right = eval(segs[1], tv);
        EXPECT_LT(std::abs(left.theta - right.theta), 1e-9);
        EXPECT_LT(std::abs(left.omega - right.omega), 1e-9);
        EXPECT_LT(std::abs(left.alpha - right.alpha), 1e-9);
    }
}

TEST(TwoSegmentVia, ElevatedViaVelocityMovesThePeak)
{
    const double T = 3.0, tv = 0.4 * T;
    const auto single = solve_quintic({0, 0, 0}, {2.0, 0, 0}, 0.0, T);
    const auto ref = eval(single, tv);
    const auto path = two_segment_via({0, 0, 0}, {ref.theta, ref.omega * 1.6, 0.0}, tv, {2.0, 0, 0}, T);
    double best_t = 0.0, best_w = -1.0;
    for (int i = 0; i <= 30000; ++i) {
        const double t = T * i / 30000.0;
        const double w = path.eval(t).omega;
        if (w > best_w) {
            best_w = w;
            best_t = t;
        }
    }
    EXPECT_NEAR(best_t, tv, 0.1 * T);
    EXPECT_GT(best_w, ref.omega);
}

TEST(TwoSegmentVia, RejectsViaTimeOutsideOpenInterval)
{
    EXPECT_THROW(two_segment_via({}, {}, 0.0, {1, 0, 0}, 1.0), Error);
    EXPECT_THROW(two_segment_via({}, {}, 1.0, {1, 0, 0}, 1.0), Error);
    EXPECT_THROW(two_segment_via({}, {}, 1e-12, {1, 0, 0}, 1.0), Error);
    EXPECT_THROW(two_segment_via({}, {}, -0.2, {1, 0, 0}, 1.0), Error);
}

TEST(Sample, GridAnchorsBothEndpoints)
{
    PiecewiseTrajectory traj;
    traj.joints.emplace_back(std::vector<QuinticSegment>{solve_quintic({0, 0, 0}, {1, 0, 0}, 0.0, 1.0)});
    const auto exact = sample(traj, 0.25);
    EXPECT_EQ(exact.size(), 5u);
    EXPECT_FALSE(exact.final_step_short);
    EXPECT_EQ(exact.t.back(), 1.0);

    const auto ragged = sample(traj, 0.3);
    ASSERT_EQ(ragged.size(), 5u);
    EXPECT_TRUE(ragged.final_step_short);
    EXPECT_EQ(ragged.t.back(), 1.0);
    EXPECT_NEAR(ragged.t[3], 0.9, 1e-15);
    EXPECT_NO_THROW(validate_uniform(ragged));
    EXPECT_NEAR(ragged.joints[0].theta.back(), 1.0, 1e-12);
}

TEST(Sample, RejectsBadStep)
{
    PiecewiseTrajectory traj;
    traj.joints.emplace_back(std::vector<QuinticSegment>{solve_quintic({0, 0, 0}, {1, 0, 0}, 0.0, 1.0)});
    EXPECT_THROW(sample(traj, 1.0), Error);
    EXPECT_THROW(sample(traj, 0.0), Error);
    EXPECT_THROW(sample(traj, -0.1), Error);
}

TEST(Sample, FiniteDifferencesMatchDerivatives)
{
    const double T = 3.0;
    PiecewiseTrajectory traj;
    traj.joints.push_back(two_segment_via({0, 0, 0}, {1.1, 1.2, -0.5}, 1.1, {2.6, 0, 0}, T));
    const auto s = sample(traj, 1e-3);
    const auto& j = s.joints[0];
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const double h = 2e-3;
        EXPECT_NEAR((j.theta[i + 1] - j.theta[i - 1]) / h, j.omega[i], 1e-4);
        // Jerk jumps at the via point, so the central difference is only first order there.
        const double tol = std::abs(s.t[i] - 1.1) < h ? 5e-3 : 1e-4;
        EXPECT_NEAR((j.omega[i + 1] - j.omega[i - 1]) / h, j.alpha[i], tol);
    }
}

TEST(ClassicProfile, TrianglePeaksAtMidpoint)
{
    const auto p = classic_profile(ProfileKind::triangle, 0.0, 1.0, 1.0);
    const auto& w = p.joints[0].omega;
    const auto it = std::max_element(w.begin(), w.end());
    EXPECT_NEAR(*it, 2.0, 1e-12);
    EXPECT_NEAR(p.t[static_cast<std::size_t>(it - w.begin())], 0.5, 1e-12);
}

TEST(ClassicProfile, TrapezoidCruiseVelocity)
{
    const auto p = classic_profile(ProfileKind::trapezoid, 0.0, 1.0, 1.0);
    const auto& w = p.joints[0].omega;
    EXPECT_NEAR(*std::max_element(w.begin(), w.end()), 1.5, 1e-12);
    EXPECT_NEAR(w[500], 1.5, 1e-12);
    // Displacement integral of the sampled velocity.
    double area = 0.0;
    for (std::size_t i = 1; i < p.size(); ++i) area += 0.5 * (w[i] + w[i - 1]) * (p.t[i] - p.t[i - 1]);
    EXPECT_NEAR(area, 1.0, 1e-5);
}

TEST(ClassicProfile, QuinticMatchesSolver)
{
    const auto p = classic_profile(ProfileKind::quintic, 0.2, 1.7, 2.0, 1e-2);
    const auto seg = solve_quintic({0.2, 0, 0}, {1.7, 0, 0}, 0.0, 2.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto k = eval(seg, p.t[i]);
        EXPECT_NEAR(p.joints[0].theta[i], k.theta, 1e-12);
        EXPECT_NEAR(p.joints[0].omega[i], k.omega, 1e-12);
    }
}

TEST(ClassicProfile, EveryFamilyCoversTheDisplacement)
{
    for (auto kind : kAllProfileKinds) {
        const auto p = classic_profile(kind, 0.3, 2.9, 3.0);
        const auto& j = p.joints[0];
        EXPECT_NEAR(j.theta.back() - j.theta.front(), 2.6, 1e-6) << to_string(kind);
        EXPECT_NEAR(j.omega.front(), 0.0, 1e-12) << to_string(kind);
        EXPECT_NEAR(j.omega.back(), 0.0, 1e-12) << to_string(kind);
        double area = 0.0;
        for (std::size_t i = 1; i < p.size(); ++i) area += 0.5 * (j.omega[i] + j.omega[i - 1]) * p.dt;
        EXPECT_NEAR(area, 2.6, 1e-5) << to_string(kind);
    }
}

TEST(ClassicProfile, UnknownKindRejected)
{
    try {
        parse_profile_kind("bang_bang");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::unknown_kind);
    }
    EXPECT_EQ(parse_profile_kind("s_curve"), ProfileKind::s_curve);
    EXPECT_THROW(classic_profile(ProfileKind::cubic, 0, 1, 0.0), Error);
}
