#include "biotraj/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "biotraj/error.hpp"
#include "csv.hpp"

namespace biotraj {

using nlohmann::json;
using detail::format_double;

namespace {

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::file_not_found, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorCode::file_not_found, "failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::file_not_found, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string trajectory_csv(const SampledTrajectory& traj)
{
    const std::size_t nj = traj.joints.size();
    const bool tau = traj.has_torques();
    const bool power = traj.power.size() == traj.size() && tau;
    std::string out = "t";
    for (std::size_t j = 1; j <= nj; ++j) {
        const auto k = std::to_string(j);
        out += ",theta" + k + ",omega" + k + ",alpha" + k;
    }
    if (tau) {
        for (std::size_t j = 1; j <= nj; ++j) out += ",tau" + std::to_string(j);
    }
    if (power) out += ",power";
    out += '\n';
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out += format_double(traj.t[i]);
        for (const auto& js : traj.joints) {
            out += ',' + format_double(js.theta[i]);
            out += ',' + format_double(js.omega[i]);
            out += ',' + format_double(js.alpha[i]);
        }
        if (tau) {
            for (const auto& js : traj.joints) out += ',' + format_double(js.tau[i]);
        }
        if (power) out += ',' + format_double(traj.power[i]);
        out += '\n';
    }
    return out;
}

void write_trajectory_csv(const SampledTrajectory& traj, const std::filesystem::path& path)
{
    write_text(path, trajectory_csv(traj));
}

SampledTrajectory read_trajectory_csv(const std::filesystem::path& path)
{
    const auto table = detail::read_csv(path);
    const auto col = [&](const std::string& name) { return detail::require_column(table, name, path); };
    const auto has = [&](const std::string& name) {
        return std::find(table.header.begin(), table.header.end(), name) != table.header.end();
    };
    std::size_t nj = 0;
    while (has("theta" + std::to_string(nj + 1))) ++nj;
    if (nj == 0) throw Error(ErrorCode::missing_column, path.string() + ": missing column 'theta1'");

    const bool tau = has("tau1");
    const std::size_t expected = 1 + 3 * nj + (tau ? nj : 0) + (has("power") ? 1 : 0);
    if (table.header.size() != expected) {
        throw Error(ErrorCode::malformed_header, path.string() + ": unexpected trajectory columns");
    }

    SampledTrajectory traj;
    traj.joints.resize(nj);
    const auto tc = col("t");
    for (const auto& row : table.rows) traj.t.push_back(row[tc]);
    for (std::size_t j = 0; j < nj; ++j) {
        const auto k = std::to_string(j + 1);
        const auto th = col("theta" + k), om = col("omega" + k), al = col("alpha" + k);
        auto& js = traj.joints[j];
        for (const auto& row : table.rows) {
            js.theta.push_back(row[th]);
            js.omega.push_back(row[om]);
            js.alpha.push_back(row[al]);
        }
        if (tau) {
            const auto tq = col("tau" + k);
            for (const auto& row : table.rows) js.tau.push_back(row[tq]);
        }
    }
    if (has("power")) {
        const auto pc = col("power");
        for (const auto& row : table.rows) traj.power.push_back(row[pc]);
    }
    for (std::size_t i = 1; i < traj.t.size(); ++i) {
        if (!(traj.t[i] > traj.t[i - 1])) {
            throw Error(ErrorCode::non_monotonic_time, path.string() + ": time stamps must increase");
        }
    }
    if (traj.t.size() >= 2) {
        traj.dt = traj.t[1] - traj.t[0];
        const double last = traj.t.back() - traj.t[traj.t.size() - 2];
        traj.final_step_short = traj.t.size() > 2 && last < traj.dt * (1.0 - 1e-6);
    }
    return traj;
}

void write_series_csv(const std::vector<std::pair<std::string, TimeSeries>>& columns,
                      const std::filesystem::path& path)
{
    if (columns.empty()) throw Error(ErrorCode::invalid_argument, "no series to write");
    const auto& t = columns.front().second.t;
    std::string out = "t";
    for (const auto& [name, s] : columns) {
        if (s.t.size() != t.size()) throw Error(ErrorCode::invalid_argument, "series lengths differ");
        out += ',' + name;
    }
    out += '\n';
    for (std::size_t i = 0; i < t.size(); ++i) {
        out += format_double(t[i]);
        for (const auto& col : columns) out += ',' + format_double(col.second.v[i]);
        out += '\n';
    }
    write_text(path, out);
}

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> keys, const std::string& where)
{
    if (!obj.is_object()) throw Error(ErrorCode::invalid_config, where + " must be an object");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw Error(ErrorCode::invalid_config, "unknown key '" + item.key() + "' in " + where);
        }
    }
}

template <typename T>
void read_opt(const json& obj, const char* key, T& out)
{
    if (obj.contains(key)) out = obj.at(key).get<T>();
}

void read_pair(const json& obj, const char* key, std::array<double, 2>& out)
{
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_array() || v.size() != 2) {
        throw Error(ErrorCode::invalid_config, std::string(key) + " must be a [shoulder, elbow] pair");
    }
    out = {v[0].get<double>(), v[1].get<double>()};
}

void read_range(const json& obj, const char* key, AngleRange& out)
{
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_array() || v.size() != 2) {
        throw Error(ErrorCode::invalid_config, std::string(key) + " must be a [lo, hi] pair");
    }
    out = {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

PlannerConfig parse_planner_config(const std::string& text)
{
    PlannerConfig cfg;
    auto& p = cfg.problem;
    try {
        const json root = json::parse(text);
        reject_unknown(root, {"arm", "start_deg", "end_deg", "duration_s", "dt_s", "limits", "phase", "weights", "pso"},
                       "config");
        if (root.contains("arm")) {
            const auto& a = root.at("arm");
            reject_unknown(a, {"l1", "l2", "m1", "m2", "m_payload", "g"}, "arm");
            read_opt(a, "l1", p.arm.l1);
            read_opt(a, "l2", p.arm.l2);
            read_opt(a, "m1", p.arm.m1);
            read_opt(a, "m2", p.arm.m2);
            read_opt(a, "m_payload", p.arm.m_payload);
            read_opt(a, "g", p.arm.g);
        }
        read_pair(root, "start_deg", p.start_deg);
        read_pair(root, "end_deg", p.end_deg);
        read_opt(root, "duration_s", p.duration);
        read_opt(root, "dt_s", p.dt);
        if (root.contains("limits")) {
            const auto& l = root.at("limits");
            reject_unknown(l, {"max_velocity", "max_acceleration"}, "limits");
            read_pair(l, "max_velocity", p.limits.max_velocity);
            read_pair(l, "max_acceleration", p.limits.max_acceleration);
        }
        if (root.contains("phase")) {
            const auto& ph = root.at("phase");
            reject_unknown(ph, {"high_load", "weakest", "decel", "target_peak_angle_deg", "hysteresis_deg"}, "phase");
            read_range(ph, "high_load", p.phase.high_load);
            read_range(ph, "weakest", p.phase.weakest);
            read_range(ph, "decel", p.phase.decel);
            read_opt(ph, "target_peak_angle_deg", p.phase.target_peak_angle);
            read_opt(ph, "hysteresis_deg", p.phase.hysteresis);
        }
        if (root.contains("weights")) {
            const auto& w = root.at("weights");
            reject_unknown(w, {"w_energy", "w_peak", "w_limit", "peak_deadband_deg", "w_peak_power"}, "weights");
            read_opt(w, "w_energy", p.weights.w_energy);
            read_opt(w, "w_peak", p.weights.w_peak);
            read_opt(w, "w_limit", p.weights.w_limit);
            read_opt(w, "peak_deadband_deg", p.weights.peak_deadband);
            read_opt(w, "w_peak_power", p.weights.w_peak_power);
        }
        if (root.contains("pso")) {
            const auto& s = root.at("pso");
            reject_unknown(s, {"swarm_size", "iterations", "inertia", "cognitive", "social", "seed", "tolerance",
                               "stagnation_window", "velocity_clamp", "threads"},
                           "pso");
            read_opt(s, "swarm_size", cfg.pso.swarm_size);
            read_opt(s, "iterations", cfg.pso.iterations);
            read_opt(s, "inertia", cfg.pso.inertia);
            read_opt(s, "cognitive", cfg.pso.cognitive);
            read_opt(s, "social", cfg.pso.social);
            read_opt(s, "seed", cfg.pso.seed);
            read_opt(s, "tolerance", cfg.pso.tolerance);
            read_opt(s, "stagnation_window", cfg.pso.stagnation_window);
            read_opt(s, "velocity_clamp", cfg.pso.velocity_clamp);
            read_opt(s, "threads", cfg.pso.threads);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::invalid_config, std::string("config: ") + e.what());
    }
    p.validate();
    cfg.pso.validate();
    return cfg;
}

PlannerConfig load_planner_config(const std::filesystem::path& path)
{
    return parse_planner_config(read_text(path));
}

std::string planner_config_json(const PlannerConfig& cfg)
{
    const auto& p = cfg.problem;
    const auto range = [](const AngleRange& r) { return json::array({r.lo, r.hi}); };
    const json root = {
        {"arm", {{"l1", p.arm.l1}, {"l2", p.arm.l2}, {"m1", p.arm.m1}, {"m2", p.arm.m2},
                 {"m_payload", p.arm.m_payload}, {"g", p.arm.g}}},
        {"start_deg", p.start_deg},
        {"end_deg", p.end_deg},
        {"duration_s", p.duration},
        {"dt_s", p.dt},
        {"limits", {{"max_velocity", p.limits.max_velocity}, {"max_acceleration", p.limits.max_acceleration}}},
        {"phase", {{"high_load", range(p.phase.high_load)}, {"weakest", range(p.phase.weakest)},
                   {"decel", range(p.phase.decel)}, {"target_peak_angle_deg", p.phase.target_peak_angle},
                   {"hysteresis_deg", p.phase.hysteresis}}},
        {"weights", {{"w_energy", p.weights.w_energy}, {"w_peak", p.weights.w_peak},
                     {"w_limit", p.weights.w_limit}, {"peak_deadband_deg", p.weights.peak_deadband},
                     {"w_peak_power", p.weights.w_peak_power}}},
        {"pso", {{"swarm_size", cfg.pso.swarm_size}, {"iterations", cfg.pso.iterations},
                 {"inertia", cfg.pso.inertia}, {"cognitive", cfg.pso.cognitive}, {"social", cfg.pso.social},
                 {"seed", cfg.pso.seed}, {"tolerance", cfg.pso.tolerance},
                 {"stagnation_window", cfg.pso.stagnation_window}, {"velocity_clamp", cfg.pso.velocity_clamp},
                 {"threads", cfg.pso.threads}}},
    };
    return root.dump(2) + "\n";
}

std::string opt_result_json(const OptResult& r)
{
    const json j = {
        {"best_position", r.best_position},
        {"best_fitness", r.best_fitness},
        {"evaluations", r.evaluations},
        {"iterations_run", r.iterations_run},
        {"terminated_by", std::string(to_string(r.terminated_by))},
        {"rng", r.rng},
    };
    return j.dump(2) + "\n";
}

std::string plan_summary_json(const PlanResult& r, const PsoConfig& config)
{
    const json j = {
        {"standard_total_work_j", r.standard_energy.total_work},
        {"optimized_total_work_j", r.optimized_energy.total_work},
        {"standard_work_per_joint_j", r.standard_energy.work_per_joint},
        {"optimized_work_per_joint_j", r.optimized_energy.work_per_joint},
        {"work_reduction_pct", r.work_reduction_pct},
        {"standard_peak_power_w", r.standard_energy.peak_power},
        {"optimized_peak_power_w", r.optimized_energy.peak_power},
        {"peak_power_reduction_pct", r.peak_power_reduction_pct},
        {"standard_peak_angle_deg", r.standard_peak_angle},
        {"peak_angle_achieved_deg", r.peak_angle_achieved},
        {"limit_violation", r.limit_violation},
        {"feasible", r.feasible},
        {"decision", r.decision},
        {"pso", {{"best_fitness", r.pso.best_fitness}, {"evaluations", r.pso.evaluations},
                 {"iterations_run", r.pso.iterations_run},
                 {"terminated_by", std::string(to_string(r.pso.terminated_by))}, {"rng", r.pso.rng},
                 {"seed", config.seed}}},
    };
    return j.dump(2) + "\n";
}

std::string compare_table(const PlanResult& r)
{
    std::ostringstream os;
    os << std::fixed;
    os << "metric                      standard     optimized    change\n";
    os << "total |work| (J)         " << std::setw(12) << std::setprecision(4) << r.standard_energy.total_work
       << "  " << std::setw(12) << r.optimized_energy.total_work << "  " << std::setw(8) << std::setprecision(2)
       << -r.work_reduction_pct << " %\n";
    os << "peak power (W)           " << std::setw(12) << std::setprecision(4) << r.standard_energy.peak_power
       << "  " << std::setw(12) << r.optimized_energy.peak_power << "  " << std::setw(8) << std::setprecision(2)
       << -r.peak_power_reduction_pct << " %\n";
    os << "elbow speed peak (deg)   " << std::setw(12) << std::setprecision(2) << r.standard_peak_angle << "  "
       << std::setw(12) << r.peak_angle_achieved << '\n';
    os << "limit violation          " << std::setw(12) << 0.0 << "  " << std::setw(12) << std::setprecision(6)
       << r.limit_violation << (r.feasible ? "" : "  INFEASIBLE") << '\n';
    return os.str();
}

PlanOutputs write_plan_outputs(const PlanResult& r, const PsoConfig& config, const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::file_not_found, "cannot create " + dir.string() + ": " + ec.message());
    PlanOutputs out{dir / "standard_trajectory.csv", dir / "optimized_trajectory.csv", dir / "power_curves.csv",
                    dir / "summary.json"};
    write_trajectory_csv(r.standard, out.standard_csv);
    write_trajectory_csv(r.optimized, out.optimized_csv);

    TimeSeries std_power{r.standard.t, r.standard_energy.power_series};
    TimeSeries opt_power{r.optimized.t, r.optimized_energy.power_series};
    write_series_csv({{"standard_power", std_power}, {"optimized_power", opt_power}}, out.power_csv);
    write_text(out.summary_json, plan_summary_json(r, config));
    return out;
}

std::string segmentation_json(const PhaseIntervals& phases, const FeaturePoints* features,
                              const std::string& feature_error)
{
    const auto windows = [](const std::vector<TimeWindow>& ws) {
        json arr = json::array();
        for (const auto& w : ws) arr.push_back(json::array({w.start, w.end}));
        return arr;
    };
    json j;
    j["phases"] = {{"high_load", windows(phases.high_load)},
                   {"weakest", windows(phases.weakest)},
                   {"decel", windows(phases.decel)}};
    if (features != nullptr) {
        json emg = json::object();
        for (const auto& [name, peaks] : features->emg_peaks) {
            json arr = json::array();
            for (const auto& pk : peaks) arr.push_back({{"t", pk.time}, {"value", pk.value}, {"prominence", pk.prominence}});
            emg[name] = arr;
        }
        j["features"] = {
            {"velocity_peak", {{"t", features->velocity_peak.time},
                               {"elbow_angle_deg", features->velocity_peak.angle_deg},
                               {"speed_deg_s", features->velocity_peak.speed}}},
            {"emg_peaks", emg},
            {"accel_zero_crossing",
             features->accel_zero_crossing ? json(*features->accel_zero_crossing) : json(nullptr)},
        };
    } else {
        j["features"] = nullptr;
        j["feature_error"] = feature_error;
    }
    return j.dump(2) + "\n";
}

}  // namespace biotraj
