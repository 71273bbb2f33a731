// biotraj command-line front end.
#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include <nlohmann/json.hpp>

#include "biotraj/error.hpp"
#include "biotraj/io.hpp"
#include "biotraj/phase.hpp"
#include "biotraj/planner.hpp"
#include "biotraj/pso.hpp"
#include "biotraj/signal.hpp"
#include "biotraj/trajectory.hpp"

namespace fs = std::filesystem;
using namespace biotraj;

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kInputData = 2, kInfeasible = 3 };

int report_error(std::string_view code, const std::string& message, int exit_code)
{
    const nlohmann::json j = {{"error", std::string(code)}, {"message", message}};
    std::cerr << j.dump() << '\n';
    return exit_code;
}

struct PlanArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
};

PlannerConfig load_with_overrides(const PlanArgs& args)
{
    auto cfg = load_planner_config(args.config);
    if (args.seed) cfg.pso.seed = *args.seed;
    if (const auto threads = threads_from_env(); threads > 0) cfg.pso.threads = threads;
    return cfg;
}

int run_plan(const PlanArgs& args, bool table)
{
    const auto cfg = load_with_overrides(args);
    const auto result = optimize_plan(cfg.problem, cfg.pso);
    if (!args.out.empty()) {
        const auto outputs = write_plan_outputs(result, cfg.pso, args.out);
        if (!table) std::cout << "wrote " << outputs.summary_json.string() << '\n';
    }
    if (table) std::cout << compare_table(result);
    if (!result.feasible) {
        return report_error(to_string(ErrorCode::infeasible_plan),
                            "best plan violates joint limits by " + std::to_string(result.limit_violation),
                            kInfeasible);
    }
    return kOk;
}

struct SegmentArgs {
    std::string motion;
    std::string emg;
    std::string out;
    double cutoff = kMotionFilter.cutoff_hz;
};

int run_segment(const SegmentArgs& args)
{
    auto motion = load_motion_csv(args.motion);
    if (args.cutoff > 0.0) {
        const FilterSpec spec{args.cutoff, kMotionFilter.order};
        motion.elbow_angle = lowpass_zero_phase(motion.elbow_angle, spec);
        motion.shoulder_angle = lowpass_zero_phase(motion.shoulder_angle, spec);
    }
    std::optional<EmgRecording> emg;
    if (!args.emg.empty()) emg = load_emg_csv(args.emg);

    const PhaseSpec spec;
    const auto phases = segment_by_elbow_angle(motion.elbow_angle, spec);
    std::string json;
    try {
        const auto features = extract_feature_points(motion, emg, spec);
        json = segmentation_json(phases, &features, "");
    } catch (const Error& e) {
        if (e.code() != ErrorCode::no_peak_found) throw;
        json = segmentation_json(phases, nullptr, std::string(to_string(e.code())));
    }
    fs::create_directories(args.out);
    const fs::path path = fs::path(args.out) / "segmentation.json";
    std::ofstream(path) << json;
    std::cout << json;
    return kOk;
}

struct FilterArgs {
    std::string in;
    std::string out;
    double cutoff = 6.0;
    int order = 2;
};

int run_filter(const FilterArgs& args)
{
    auto columns = load_series_csv(args.in);
    if (columns.empty()) throw Error(ErrorCode::missing_column, args.in + ": no value columns");
    for (auto& [name, series] : columns) series = lowpass_zero_phase(series, {args.cutoff, args.order});
    write_series_csv(columns, args.out);
    return kOk;
}

struct ProfileArgs {
    std::string kind = "all";
    double theta0 = 0.0;
    double thetaf = 150.0;
    double duration = 3.0;
    double dt = 1e-3;
    std::string out;
};

int run_profiles(const ProfileArgs& args)
{
    constexpr double kDeg = std::numbers::pi / 180.0;
    std::vector<ProfileKind> kinds;
    if (args.kind == "all") {
        kinds.assign(kAllProfileKinds.begin(), kAllProfileKinds.end());
    } else {
        kinds.push_back(parse_profile_kind(args.kind));
    }
    fs::create_directories(args.out);
    for (auto kind : kinds) {
        const auto traj = classic_profile(kind, args.theta0 * kDeg, args.thetaf * kDeg, args.duration, args.dt);
        const fs::path path = fs::path(args.out) / ("profile_" + std::string(to_string(kind)) + ".csv");
        write_trajectory_csv(traj, path);
        std::cout << "wrote " << path.string() << '\n';
    }
    return kOk;
}

struct BenchArgs {
    std::string fn = "sphere";
    std::size_t dim = 3;
    std::uint64_t seed = 42;
    std::size_t iterations = PsoConfig{}.iterations;
    std::size_t swarm = PsoConfig{}.swarm_size;
};

int run_pso_bench(const BenchArgs& args)
{
    Objective obj{args.dim, {}};
    Bounds bounds(args.dim, Interval{-5.0, 5.0});
    if (args.fn == "sphere") {
        obj.fn = [](std::span<const double> x) {
            double s = 0.0;
            for (double v : x) s += v * v;
            return s;
        };
    } else if (args.fn == "rosenbrock") {
        bounds.assign(args.dim, Interval{-2.048, 2.048});
        obj.fn = [](std::span<const double> x) {
            double s = 0.0;
            for (std::size_t i = 0; i + 1 < x.size(); ++i) {
                s += 100.0 * std::pow(x[i + 1] - x[i] * x[i], 2) + std::pow(1.0 - x[i], 2);
            }
            return s;
        };
    } else if (args.fn == "rastrigin") {
        bounds.assign(args.dim, Interval{-5.12, 5.12});
        obj.fn = [](std::span<const double> x) {
            double s = 10.0 * static_cast<double>(x.size());
            for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
            return s;
        };
    } else {
        throw Error(ErrorCode::unknown_kind, "unknown benchmark function '" + args.fn + "'");
    }
    PsoConfig cfg;
    cfg.seed = args.seed;
    cfg.iterations = args.iterations;
    cfg.swarm_size = args.swarm;
    cfg.threads = threads_from_env();
    std::cout << opt_result_json(optimize(obj, bounds, cfg));
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bio-inspired two-link arm trajectory planning"};
    app.require_subcommand(1);

    PlanArgs plan_args;
    auto* plan = app.add_subcommand("plan", "Optimize the via-point plan and write CSV/JSON outputs");
    plan->add_option("--config", plan_args.config, "Planner JSON config")->required();
    plan->add_option("--seed", plan_args.seed, "PSO seed (overrides config)");
    plan->add_option("--out", plan_args.out, "Output directory")->required();

    PlanArgs compare_args;
    auto* compare = app.add_subcommand("compare", "Plan and print a standard-vs-optimized table");
    compare->add_option("--config", compare_args.config, "Planner JSON config")->required();
    compare->add_option("--seed", compare_args.seed, "PSO seed (overrides config)");
    compare->add_option("--out", compare_args.out, "Optional output directory");

    SegmentArgs seg_args;
    auto* segment = app.add_subcommand("segment", "Phase intervals and feature points from recordings");
    segment->add_option("--motion", seg_args.motion, "Motion CSV")->required();
    segment->add_option("--emg", seg_args.emg, "EMG CSV");
    segment->add_option("--out", seg_args.out, "Output directory")->required();
    segment->add_option("--cutoff", seg_args.cutoff, "Motion low-pass cutoff in Hz (0 disables)");

    FilterArgs filter_args;
    auto* filter = app.add_subcommand("filter", "Zero-phase low-pass every column of a t,... CSV");
    filter->add_option("--in", filter_args.in, "Input CSV")->required();
    filter->add_option("--out", filter_args.out, "Output CSV")->required();
    filter->add_option("--cutoff", filter_args.cutoff, "Cutoff frequency in Hz")->required();
    filter->add_option("--order", filter_args.order, "Butterworth order");

    ProfileArgs prof_args;
    auto* profiles = app.add_subcommand("profiles", "Classic velocity-profile families as CSV");
    profiles->add_option("--kind", prof_args.kind, "all|trapezoid|s_curve|triangle|cubic|quintic");
    profiles->add_option("--theta0", prof_args.theta0, "Start angle in degrees");
    profiles->add_option("--thetaf", prof_args.thetaf, "End angle in degrees");
    profiles->add_option("--duration", prof_args.duration, "Duration in seconds");
    profiles->add_option("--dt", prof_args.dt, "Sampling step in seconds");
    profiles->add_option("--out", prof_args.out, "Output directory")->required();

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("pso-bench", "Run the PSO on an analytic test function");
    bench->add_option("--fn", bench_args.fn, "sphere|rosenbrock|rastrigin");
    bench->add_option("--dim", bench_args.dim, "Dimension");
    bench->add_option("--seed", bench_args.seed, "Seed");
    bench->add_option("--iterations", bench_args.iterations, "Iterations");
    bench->add_option("--swarm", bench_args.swarm, "Swarm size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error("usage", e.what(), kUsage);
    }

    try {
        if (*plan) return run_plan(plan_args, false);
        if (*compare) return run_plan(compare_args, true);
        if (*segment) return run_segment(seg_args);
        if (*filter) return run_filter(filter_args);
        if (*profiles) return run_profiles(prof_args);
        if (*bench) return run_pso_bench(bench_args);
    } catch (const Error& e) {
        const bool usage = e.code() == ErrorCode::unknown_kind;
        return report_error(to_string(e.code()), e.what(), usage ? kUsage : kInputData);
    } catch (const fs::filesystem_error& e) {
        return report_error("filesystem", e.what(), kInputData);
    }
    return kUsage;
}
