#include "biotraj/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "biotraj/error.hpp"

namespace biotraj {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double elbow_progress_at_target(const PlanningProblem& p)
{
    return (p.phase.target_peak_angle - p.start_deg[1]) / (p.end_deg[1] - p.start_deg[1]);
}

}  // namespace

void PlanningProblem::validate() const
{
    arm.validate();
    phase.validate();
    if (!std::isfinite(duration) || !(duration > 0.0)) {
        throw Error(ErrorCode::invalid_config, "duration must be positive");
    }
    if (!(dt > 0.0) || !(dt < duration)) throw Error(ErrorCode::invalid_config, "dt must be in (0, duration)");
    for (std::size_t j = 0; j < 2; ++j) {
        if (!std::isfinite(start_deg[j]) || !std::isfinite(end_deg[j])) {
            throw Error(ErrorCode::invalid_config, "start/end angles must be finite");
        }
        if (!(limits.max_velocity[j] > 0.0) || !(limits.max_acceleration[j] > 0.0)) {
            throw Error(ErrorCode::invalid_config, "joint limits must be positive");
        }
    }
    if (weights.w_energy < 0.0 || weights.w_peak < 0.0 || weights.w_limit < 0.0 || weights.peak_deadband < 0.0 ||
        weights.w_peak_power < 0.0) {
        throw Error(ErrorCode::invalid_config, "objective weights must be non-negative");
    }
}

PiecewiseTrajectory standard_trajectory(const PlanningProblem& p)
{
    PiecewiseTrajectory traj;
    for (std::size_t j = 0; j < 2; ++j) {
        const BoundaryCondition a{p.start_deg[j] * kDegToRad, 0.0, 0.0};
        const BoundaryCondition b{p.end_deg[j] * kDegToRad, 0.0, 0.0};
        traj.joints.emplace_back(std::vector<QuinticSegment>{solve_quintic(a, b, 0.0, p.duration)});
    }
    return traj;
}

SampledTrajectory standard_plan(const PlanningProblem& p)
{
    p.validate();
    return attach_torques(p.arm, sample(standard_trajectory(p), p.dt));
}

Bounds decision_bounds(const PlanningProblem& p)
{
    const auto& l = p.limits;
    return {{kViaFractionMin, kViaFractionMax},
            {-l.max_velocity[0], l.max_velocity[0]},
            {-l.max_velocity[1], l.max_velocity[1]},
            {-l.max_acceleration[0], l.max_acceleration[0]},
            {-l.max_acceleration[1], l.max_acceleration[1]}};
}

PiecewiseTrajectory decision_decode(const PlanningProblem& p, std::span<const double> x)
{
    if (x.size() != kDecisionSize) {
        throw Error(ErrorCode::dimension_mismatch, "decision vector must have 5 entries");
    }
    const auto box = decision_bounds(p);
    for (std::size_t i = 0; i < kDecisionSize; ++i) {
        if (!std::isfinite(x[i]) || x[i] < box[i].lo || x[i] > box[i].hi) {
            throw Error(ErrorCode::invalid_argument,
                        "decision entry " + std::to_string(i) + " = " + std::to_string(x[i]) + " outside its bounds");
        }
    }
    const double progress = elbow_progress_at_target(p);
    if (!(progress > 0.0 && progress < 1.0)) {
        throw Error(ErrorCode::invalid_config, "target peak angle must lie strictly between elbow start and end");
    }
    const double t_via = x[0] * p.duration;
    PiecewiseTrajectory traj;
    for (std::size_t j = 0; j < 2; ++j) {
        const double a = p.start_deg[j] * kDegToRad;
        const double b = p.end_deg[j] * kDegToRad;
        const double via_angle = j == 1 ? p.phase.target_peak_angle * kDegToRad : a + progress * (b - a);
        const BoundaryCondition via{via_angle, x[1 + j], x[3 + j]};
        traj.joints.push_back(two_segment_via({a, 0.0, 0.0}, via, t_via, {b, 0.0, 0.0}, p.duration));
    }
    return traj;
}

double limit_violation(const SampledTrajectory& traj, const JointLimits& limits)
{
    double total = 0.0;
    for (std::size_t j = 0; j < traj.joints.size() && j < 2; ++j) {
        const auto& js = traj.joints[j];
        const auto over = [&](std::size_t i) {
            return std::max(0.0, std::abs(js.omega[i]) - limits.max_velocity[j]) +
                   std::max(0.0, std::abs(js.alpha[i]) - limits.max_acceleration[j]);
        };
        for (std::size_t i = 1; i < traj.size(); ++i) {
            total += 0.5 * (over(i - 1) + over(i)) * (traj.t[i] - traj.t[i - 1]);
        }
    }
    return total;
}

PlanEvaluation evaluate_plan(const PlanningProblem& p, const PiecewiseTrajectory& traj)
{
    PlanEvaluation e;
    e.trajectory = attach_torques(p.arm, sample(traj, p.dt));
    e.energy = energy_report(p.arm, e.trajectory);
    e.placement = check_peak_placement(e.trajectory, p.phase);
    e.limit_violation = limit_violation(e.trajectory, p.limits);
    const auto& w = p.weights;
    e.cost = w.w_energy * e.energy.total_work +
             w.w_peak * std::max(0.0, e.placement.deviation_deg - w.peak_deadband) +
             w.w_limit * e.limit_violation + w.w_peak_power * e.energy.peak_power;
    if (!std::isfinite(e.cost)) e.cost = std::numeric_limits<double>::infinity();
    return e;
}

double objective(const PlanningProblem& p, std::span<const double> x)
{
    return evaluate_plan(p, decision_decode(p, x)).cost;
}

double reduction_pct(double standard, double optimized)
{
    return standard == 0.0 ? 0.0 : 100.0 * (standard - optimized) / standard;
}

PlanResult optimize_plan(const PlanningProblem& p, const PsoConfig& config)
{
    p.validate();
    config.validate();

    const Objective obj{kDecisionSize, [&p](std::span<const double> x) { return objective(p, x); }};

    PlanResult r;
    r.pso = optimize(obj, decision_bounds(p), config);
    r.decision = r.pso.best_position;

    const auto standard = evaluate_plan(p, standard_trajectory(p));
    auto best = evaluate_plan(p, decision_decode(p, r.decision));

    r.standard = standard.trajectory;
    r.standard_energy = standard.energy;
    r.standard_peak_angle = standard.placement.peak_angle_deg;
    r.optimized = std::move(best.trajectory);
    r.optimized_energy = std::move(best.energy);
    r.peak_angle_achieved = best.placement.peak_angle_deg;
    r.limit_violation = best.limit_violation;
    r.feasible = best.limit_violation <= kLimitTolerance;
    r.work_reduction_pct = reduction_pct(r.standard_energy.total_work, r.optimized_energy.total_work);
    r.peak_power_reduction_pct = reduction_pct(r.standard_energy.peak_power, r.optimized_energy.peak_power);
    return r;
}

}  // namespace biotraj
