#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

namespace biotraj {

struct BoundaryCondition {
    double theta = 0.0;  // rad
    double omega = 0.0;  // rad/s
    double alpha = 0.0;  // rad/s^2
};

/// Position, velocity and acceleration of one joint at one instant.
struct JointKinematics {
    double theta = 0.0;
    double omega = 0.0;
    double alpha = 0.0;
};

/**
 * Quintic polynomial on [t0, tf].
 *
 * Coefficients are expressed in local time s = t - t0:
 *   theta(t) = d0 + d1 s + d2 s^2 + d3 s^3 + d4 s^4 + d5 s^5
 */
struct QuinticSegment {
    double t0 = 0.0;
    double tf = 1.0;
    std::array<double, 6> d{};

    [[nodiscard]] double duration() const noexcept { return tf - t0; }
};

/// Unique quintic meeting position/velocity/acceleration at both ends.
QuinticSegment solve_quintic(const BoundaryCondition& bc0, const BoundaryCondition& bcf,
                             double t0, double tf);

/// Throws out_of_span when t lies outside [t0, tf] (1e-12 relative slack).
JointKinematics eval(const QuinticSegment& seg, double t);

/// Piecewise quintic for one joint; segments are contiguous in time.
class JointPath {
public:
    JointPath() = default;
    explicit JointPath(std::vector<QuinticSegment> segments);

    [[nodiscard]] JointKinematics eval(double t) const;
    [[nodiscard]] double start_time() const { return segments_.front().t0; }
    [[nodiscard]] double end_time() const { return segments_.back().tf; }
    [[nodiscard]] const std::vector<QuinticSegment>& segments() const noexcept { return segments_; }

private:
    std::vector<QuinticSegment> segments_;
};

/// One JointPath per joint, all over the same time span.
struct PiecewiseTrajectory {
    std::vector<JointPath> joints;

    [[nodiscard]] double start_time() const { return joints.front().start_time(); }
    [[nodiscard]] double end_time() const { return joints.front().end_time(); }
};

/// Single-joint two-segment quintic through a full-state via point at t_via.
JointPath two_segment_via(const BoundaryCondition& bc0, const BoundaryCondition& via,
                          double t_via, const BoundaryCondition& bcf, double duration);

struct JointSamples {
    std::vector<double> theta;
    std::vector<double> omega;
    std::vector<double> alpha;
    std::vector<double> tau;  // empty until torques are attached
};

/**
 * Time-gridded trajectory. Samples sit at t_k = t0 + k*dt except the last one,
 * which is pinned to the end time; `final_step_short` is set when that last
 * step is shorter than dt.
 */
struct SampledTrajectory {
    double dt = 0.0;
    std::vector<double> t;
    std::vector<JointSamples> joints;
    std::vector<double> power;  // summed |tau*omega|, empty until attached
    bool final_step_short = false;

    [[nodiscard]] std::size_t size() const noexcept { return t.size(); }
    [[nodiscard]] bool has_torques() const noexcept;
};

/// Checks equal lengths and a uniform step (optionally short final step).
void validate_uniform(const SampledTrajectory& traj);

SampledTrajectory sample(const PiecewiseTrajectory& traj, double dt);

enum class ProfileKind { trapezoid, s_curve, triangle, cubic, quintic };

ProfileKind parse_profile_kind(std::string_view name);
std::string_view to_string(ProfileKind kind) noexcept;
inline constexpr std::array<ProfileKind, 5> kAllProfileKinds{
    ProfileKind::trapezoid, ProfileKind::s_curve, ProfileKind::triangle,
    ProfileKind::cubic, ProfileKind::quintic};

/// Single-joint rest-to-rest profile of the given family over [0, duration].
SampledTrajectory classic_profile(ProfileKind kind, double theta0, double thetaf,
                                  double duration, double dt = 1e-3);

}  // namespace biotraj
