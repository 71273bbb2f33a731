#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "biotraj/arm_dynamics.hpp"
#include "biotraj/phase.hpp"
#include "biotraj/pso.hpp"
#include "biotraj/trajectory.hpp"

namespace biotraj {

/// Per-joint limits, index 0 = shoulder, 1 = elbow.
struct JointLimits {
    std::array<double, 2> max_velocity{3.0, 3.0};       // rad/s
    std::array<double, 2> max_acceleration{10.0, 10.0};  // rad/s^2
};

struct ObjectiveWeights {
    double w_energy = 1.0;      // per joule of absolute work
    double w_peak = 10.0;       // per degree of peak-angle deviation beyond the deadband
    double w_limit = 1e3;       // per unit of integrated limit overshoot
    double peak_deadband = 2.0;  // deg
    // Absolute work of a rest-to-rest lift is bounded below by the potential
    // energy gained and is nearly flat at that bound, so peak power is what
    // separates otherwise equivalent plans.
    double w_peak_power = 0.05;  // per watt of peak summed |tau*omega|
};

struct PlanningProblem {
    ArmModel arm;
    std::array<double, 2> start_deg{0.0, 0.0};   // shoulder, elbow
    std::array<double, 2> end_deg{30.0, 150.0};
    double duration = 3.0;  // s
    PhaseSpec phase;
    JointLimits limits;
    ObjectiveWeights weights;
    double dt = 1e-3;  // sampling step for evaluation

    void validate() const;
};

/// Decision vector layout: [t_via / T, omega1_via, omega2_via, alpha1_via, alpha2_via].
inline constexpr std::size_t kDecisionSize = 5;
inline constexpr double kViaFractionMin = 0.15;
inline constexpr double kViaFractionMax = 0.85;
/// Limit overshoot above which a plan is reported infeasible.
inline constexpr double kLimitTolerance = 1e-6;

/// Rest-to-rest quintic per joint over [0, T].
PiecewiseTrajectory standard_trajectory(const PlanningProblem& problem);

/// Sampled standard plan with torques and power attached.
SampledTrajectory standard_plan(const PlanningProblem& problem);

Bounds decision_bounds(const PlanningProblem& problem);

/**
 * Two-segment plan through a via point. The elbow via angle is the target
 * peak angle; the shoulder via angle sits at the same fraction of its own
 * displacement. Rejects decision vectors outside decision_bounds.
 */
PiecewiseTrajectory decision_decode(const PlanningProblem& problem, std::span<const double> x);

/// Integrated overshoot of |omega| and |alpha| over the per-joint limits.
double limit_violation(const SampledTrajectory& traj, const JointLimits& limits);

struct PlanEvaluation {
    SampledTrajectory trajectory;  // with torques and power
    EnergyReport energy;
    PeakPlacement placement;
    double limit_violation = 0.0;
    double cost = 0.0;
};

PlanEvaluation evaluate_plan(const PlanningProblem& problem, const PiecewiseTrajectory& traj);

/// w_energy * work + w_peak * max(0, deviation - deadband) + w_limit * violation
/// + w_peak_power * peak_power; +inf when the dynamics produce non-finite values.
double objective(const PlanningProblem& problem, std::span<const double> x);

struct PlanResult {
    SampledTrajectory standard;
    EnergyReport standard_energy;
    SampledTrajectory optimized;
    EnergyReport optimized_energy;
    double work_reduction_pct = 0.0;
    double peak_power_reduction_pct = 0.0;
    double standard_peak_angle = 0.0;  // deg
    double peak_angle_achieved = 0.0;  // deg
    double limit_violation = 0.0;
    bool feasible = true;
    std::vector<double> decision;
    OptResult pso;
};

/// 100 * (standard - optimized) / standard, or 0 when standard is 0.
double reduction_pct(double standard, double optimized);

PlanResult optimize_plan(const PlanningProblem& problem, const PsoConfig& config = {});

}  // namespace biotraj
