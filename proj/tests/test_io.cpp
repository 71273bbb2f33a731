#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "biotraj/error.hpp"
#include "biotraj/io.hpp"
#include "biotraj/planner.hpp"

using namespace biotraj;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / "biotraj_io_tests";
    fs::create_directories(dir);
    return dir / name;
}

ErrorCode parse_error(const std::string& text)
{
    try {
        parse_planner_config(text);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "accepted: " << text;
    return ErrorCode::invalid_argument;
}

}  // namespace

TEST(TrajectoryCsv, RoundTripIsExact)
{
    PlanningProblem p;
    p.dt = 0.007;  // 3 s is not a multiple: short final step
    const auto traj = standard_plan(p);
    ASSERT_TRUE(traj.final_step_short);
    const auto path = scratch("round_trip.csv");
    write_trajectory_csv(traj, path);
    const auto back = read_trajectory_csv(path);

    EXPECT_EQ(back.t, traj.t);
    EXPECT_DOUBLE_EQ(back.dt, traj.dt);
    EXPECT_TRUE(back.final_step_short);
    ASSERT_EQ(back.joints.size(), 2u);
    for (std::size_t j = 0; j < 2; ++j) {
        EXPECT_EQ(back.joints[j].theta, traj.joints[j].theta);
        EXPECT_EQ(back.joints[j].omega, traj.joints[j].omega);
        EXPECT_EQ(back.joints[j].alpha, traj.joints[j].alpha);
        EXPECT_EQ(back.joints[j].tau, traj.joints[j].tau);
    }
    EXPECT_EQ(back.power, traj.power);
}

TEST(TrajectoryCsv, Header)
{
    const auto csv = trajectory_csv(standard_plan(PlanningProblem{}));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,theta1,omega1,alpha1,theta2,omega2,alpha2,tau1,tau2,power");
}

TEST(PlannerConfig, BenchmarkFixture)
{
    const auto cfg = load_planner_config(std::string(BIOTRAJ_DATA_DIR) + "/benchmark.json");
    EXPECT_EQ(cfg.problem.arm.l1, 0.495);
    EXPECT_EQ(cfg.problem.arm.l2, 0.45);
    EXPECT_EQ(cfg.problem.arm.m_payload, 4.0);
    EXPECT_EQ(cfg.problem.end_deg[1], 150.0);
    EXPECT_EQ(cfg.problem.duration, 3.0);
    EXPECT_EQ(cfg.problem.phase.target_peak_angle, 62.0);
    EXPECT_EQ(cfg.pso.seed, 42u);
    EXPECT_EQ(cfg.pso.swarm_size, 40u);
}

TEST(PlannerConfig, DefaultsForMissingKeys)
{
    const auto cfg = parse_planner_config(R"({"duration_s": 2.5, "pso": {"seed": 7}})");
    EXPECT_EQ(cfg.problem.duration, 2.5);
    EXPECT_EQ(cfg.pso.seed, 7u);
    EXPECT_EQ(cfg.pso.iterations, PsoConfig{}.iterations);
    EXPECT_EQ(cfg.problem.arm.m1, ArmModel{}.m1);
}

TEST(PlannerConfig, RoundTrip)
{
    const auto cfg = load_planner_config(std::string(BIOTRAJ_DATA_DIR) + "/benchmark.json");
    const auto again = parse_planner_config(planner_config_json(cfg));
    EXPECT_EQ(planner_config_json(again), planner_config_json(cfg));
}

TEST(PlannerConfig, Rejections)
{
    EXPECT_EQ(parse_error("{"), ErrorCode::invalid_config);
    EXPECT_EQ(parse_error(R"({"durations": 3})"), ErrorCode::invalid_config);
    EXPECT_EQ(parse_error(R"({"arm": {"l3": 1}})"), ErrorCode::invalid_config);
    EXPECT_EQ(parse_error(R"({"duration_s": "long"})"), ErrorCode::invalid_config);
    EXPECT_EQ(parse_error(R"({"duration_s": -1})"), ErrorCode::invalid_config);
    EXPECT_EQ(parse_error(R"({"start_deg": [1, 2, 3]})"), ErrorCode::invalid_config);
    EXPECT_EQ(parse_error(R"({"pso": {"swarm_size": 0}})"), ErrorCode::invalid_config);
    EXPECT_EQ(parse_error(R"({"phase": {"target_peak_angle_deg": 100}})"), ErrorCode::invalid_config);
}

TEST(PlanOutputs, SummaryAndFiles)
{
    PlannerConfig cfg;
    cfg.pso.swarm_size = 10;
    cfg.pso.iterations = 10;
    const auto result = optimize_plan(cfg.problem, cfg.pso);
    const auto dir = scratch("plan_out");
    const auto out = write_plan_outputs(result, cfg.pso, dir);
    for (const auto& f : {out.standard_csv, out.optimized_csv, out.power_csv, out.summary_json}) {
        EXPECT_TRUE(fs::exists(f)) << f;
    }

    std::ifstream in(out.summary_json);
    const auto j = nlohmann::json::parse(in);
    EXPECT_DOUBLE_EQ(j.at("work_reduction_pct").get<double>(), result.work_reduction_pct);
    EXPECT_DOUBLE_EQ(j.at("standard_total_work_j").get<double>(), result.standard_energy.total_work);
    EXPECT_DOUBLE_EQ(j.at("optimized_peak_power_w").get<double>(), result.optimized_energy.peak_power);
    EXPECT_EQ(j.at("feasible").get<bool>(), result.feasible);
    EXPECT_EQ(j.at("decision").size(), kDecisionSize);
    EXPECT_EQ(j.at("pso").at("seed").get<std::uint64_t>(), cfg.pso.seed);

    const auto power = load_series_csv(out.power_csv);
    ASSERT_EQ(power.size(), 2u);
    EXPECT_EQ(power[0].first, "standard_power");
    EXPECT_EQ(power[1].first, "optimized_power");
    EXPECT_EQ(power[0].second.size(), result.standard.size());
}

TEST(CompareTable, MentionsTotals)
{
    PsoConfig pso;
    pso.swarm_size = 8;
    pso.iterations = 5;
    const auto table = compare_table(optimize_plan(PlanningProblem{}, pso));
    EXPECT_NE(table.find("work"), std::string::npos);
    EXPECT_NE(table.find("peak"), std::string::npos);
}
