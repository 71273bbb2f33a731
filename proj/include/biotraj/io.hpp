#pragma once

#include <filesystem>
#include <string>

#include "biotraj/phase.hpp"
#include "biotraj/planner.hpp"
#include "biotraj/pso.hpp"
#include "biotraj/signal.hpp"
#include "biotraj/trajectory.hpp"

namespace biotraj {

/// `t,theta1,omega1,alpha1,...[,tau1,...,power]`, shortest round-trip decimals.
std::string trajectory_csv(const SampledTrajectory& traj);
void write_trajectory_csv(const SampledTrajectory& traj, const std::filesystem::path& path);
SampledTrajectory read_trajectory_csv(const std::filesystem::path& path);

void write_series_csv(const std::vector<std::pair<std::string, TimeSeries>>& columns,
                      const std::filesystem::path& path);

/// Planner configuration JSON (keys: arm, start_deg, end_deg, duration_s,
/// limits, phase, weights, pso). Missing keys keep their defaults.
struct PlannerConfig {
    PlanningProblem problem;
    PsoConfig pso;
};

PlannerConfig parse_planner_config(const std::string& json_text);
PlannerConfig load_planner_config(const std::filesystem::path& path);
std::string planner_config_json(const PlannerConfig& config);

std::string plan_summary_json(const PlanResult& result, const PsoConfig& config);

/// Human-readable comparison table.
std::string compare_table(const PlanResult& result);

struct PlanOutputs {
    std::filesystem::path standard_csv;
    std::filesystem::path optimized_csv;
    std::filesystem::path power_csv;
    std::filesystem::path summary_json;
};

/// Writes standard/optimized trajectories, the power curves and the summary.
PlanOutputs write_plan_outputs(const PlanResult& result, const PsoConfig& config,
                               const std::filesystem::path& dir);

std::string segmentation_json(const PhaseIntervals& phases, const FeaturePoints* features,
                              const std::string& feature_error);

std::string opt_result_json(const OptResult& result);

}  // namespace biotraj
