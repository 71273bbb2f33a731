// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "biotraj/arm_dynamics.hpp"
#include "biotraj/io.hpp"
#include "biotraj/phase.hpp"
#include "biotraj/planner.hpp"
#include "biotraj/pso.hpp"
#include "biotraj/signal.hpp"
#include "biotraj/trajectory.hpp"

using namespace biotraj;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// --- 1-3: benchmark plan through the CLI ------------------------------------

struct Benchmark {
    bool ran = false;
    double seconds = 0.0;
    nlohmann::json summary;
    std::string error;
};

Benchmark run_benchmark()
{
    Benchmark b;
    const auto out = fs::temp_directory_path() / "biotraj_acceptance";
    fs::remove_all(out);
    const std::string cmd = std::string(BIOTRAJ_CLI) + " plan --config " BIOTRAJ_DATA_DIR "/benchmark.json --seed 42 --out " +
                            out.string() + " > /dev/null";
    const auto t0 = std::chrono::steady_clock::now();
    const int status = std::system(cmd.c_str());
    b.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        b.error = "plan exited with status " + std::to_string(status);
        return b;
    }
    std::ifstream in(out / "summary.json");
    b.summary = nlohmann::json::parse(in);
    b.ran = true;
    return b;
}

Outcome energy_reduction(const Benchmark& b)
{
    if (!b.ran) return {false, b.error};
    const double pct = b.summary.at("work_reduction_pct").get<double>();
    const double std_work = b.summary.at("standard_total_work_j").get<double>();
    const double opt_work = b.summary.at("optimized_total_work_j").get<double>();
    return {pct >= 8.0 && b.seconds < 60.0,
            fmt("work %.4f J -> %.4f J, reduction %.3f%% (need >= 8%%), runtime %.1f s", std_work, opt_work, pct,
                b.seconds)};
}

Outcome peak_power(const Benchmark& b)
{
    if (!b.ran) return {false, b.error};
    const double s = b.summary.at("standard_peak_power_w").get<double>();
    const double o = b.summary.at("optimized_peak_power_w").get<double>();
    return {o < s, fmt("peak power %.3f W -> %.3f W (%.2f%% lower)", s, o,
                       b.summary.at("peak_power_reduction_pct").get<double>())};
}

Outcome peak_placement(const Benchmark& b)
{
    if (!b.ran) return {false, b.error};
    const double a = b.summary.at("peak_angle_achieved_deg").get<double>();
    return {std::abs(a - 62.0) <= 5.0 && a >= 40.0 && a <= 90.0,
            fmt("optimized elbow speed peaks at %.3f deg (target 62 +/- 5, inside [40, 90])", a)};
}

// --- 4: dynamics --------------------------------------------------------------

Outcome dynamics_suite()
{
    const ArmModel arm;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> ang(-kPi, kPi), vel(-3.0, 3.0), acc(-10.0, 10.0);

    bool spd = true;
    double round_trip = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const JointState s{ang(rng), ang(rng), vel(rng), vel(rng), acc(rng), acc(rng)};
        const auto d = dynamics_terms(arm, s.theta1, s.theta2, s.omega1, s.omega2);
        if (d.M12 != d.M21 || !(d.M11 > 0.0) || !(d.M11 * d.M22 - d.M12 * d.M21 > 0.0)) spd = false;
        const auto tau = inverse_dynamics(arm, s);
        const auto a = forward_dynamics(arm, s.theta1, s.theta2, s.omega1, s.omega2, tau.tau1, tau.tau2);
        round_trip = std::max({round_trip, std::abs(a.alpha1 - s.alpha1), std::abs(a.alpha2 - s.alpha2)});
    }

    // Torque-free RK4 over 1 s.
    std::array<double, 4> y{0.3, 1.1, 0.5, -0.7};
    const auto deriv = [&](const std::array<double, 4>& q) {
        const auto a = forward_dynamics(arm, q[0], q[1], q[2], q[3], 0.0, 0.0);
        return std::array<double, 4>{q[2], q[3], a.alpha1, a.alpha2};
    };
    const auto energy = [&](const std::array<double, 4>& q) {
        return kinetic_energy(arm, {q[0], q[1], q[2], q[3], 0.0, 0.0}) + potential_energy(arm, q[0], q[1]);
    };
    const double e0 = energy(y);
    const double h = 1e-4;
    double drift = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const auto k1 = deriv(y);
        std::array<double, 4> tmp;
        for (int i = 0; i < 4; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        const auto k2 = deriv(tmp);
        for (int i = 0; i < 4; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        const auto k3 = deriv(tmp);
        for (int i = 0; i < 4; ++i) tmp[i] = y[i] + h * k3[i];
        const auto k4 = deriv(tmp);
        for (int i = 0; i < 4; ++i) y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        drift = std::max(drift, std::abs(energy(y) - e0));
    }

    // Gravity against central differences of the potential.
    double grav = 0.0;
    const double eps = 1e-6;
    for (int i = 0; i < 100; ++i) {
        const double t1 = ang(rng), t2 = ang(rng);
        const auto d = dynamics_terms(arm, t1, t2, 0.0, 0.0);
        const double g1 = (potential_energy(arm, t1 + eps, t2) - potential_energy(arm, t1 - eps, t2)) / (2 * eps);
        const double g2 = (potential_energy(arm, t1, t2 + eps) - potential_energy(arm, t1, t2 - eps)) / (2 * eps);
        grav = std::max({grav, std::abs(d.G1 - g1), std::abs(d.G2 - g2)});
    }

    const bool ok = spd && round_trip < 1e-9 && drift < 1e-5 && grav < 1e-6;
    return {ok, fmt("M sym/PD %s at 1000 configs, round trip %.2e, energy drift %.2e, gravity FD %.2e",
                    spd ? "ok" : "FAILED", round_trip, drift, grav)};
}

// --- 5: quintic ---------------------------------------------------------------

Outcome quintic_suite()
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0), span(0.2, 5.0);
    double residual = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const BoundaryCondition a{u(rng), u(rng), u(rng)};
        const BoundaryCondition b{u(rng), u(rng), u(rng)};
        const double t0 = u(rng);
        const double tf = t0 + span(rng);
        const auto seg = solve_quintic(a, b, t0, tf);
        const auto s = eval(seg, t0);
        const auto e = eval(seg, tf);
        residual = std::max({residual, std::abs(s.theta - a.theta), std::abs(s.omega - a.omega),
                             std::abs(s.alpha - a.alpha), std::abs(e.theta - b.theta), std::abs(e.omega - b.omega),
                             std::abs(e.alpha - b.alpha)});
    }
    const auto unit = solve_quintic({0, 0, 0}, {1, 0, 0}, 0.0, 1.0);
    const std::array<double, 6> canonical{0, 0, 0, 10, -15, 6};
    double coef = 0.0;
    for (std::size_t k = 0; k < 6; ++k) coef = std::max(coef, std::abs(unit.d[k] - canonical[k]));
    const auto mid = solve_quintic({0.2, 0, 0}, {1.7, 0, 0}, 0.0, 2.5);
    const double vmid = eval(mid, 1.25).omega;
    const double vexp = 1.875 * 1.5 / 2.5;
    const bool ok = residual < 1e-9 && coef < 1e-12 && std::abs(vmid - vexp) < 1e-12;
    return {ok, fmt("boundary residual %.2e, canonical coeff error %.2e, midpoint velocity %.6f (expect %.6f)",
                    residual, coef, vmid, vexp)};
}

// --- 6: PSO -------------------------------------------------------------------

Outcome pso_suite()
{
    const Objective sphere{3, [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2]; }};
    const Bounds box(3, Interval{-5.0, 5.0});
    PsoConfig cfg;
    cfg.seed = 42;
    const auto a = optimize(sphere, box, cfg);
    const auto b = optimize(sphere, box, cfg);
    bool monotone = true;
    for (std::size_t i = 1; i < a.history.size(); ++i) monotone = monotone && a.history[i] <= a.history[i - 1];
    const bool same = a.history == b.history && a.best_position == b.best_position;
    return {a.best_fitness < 1e-4 && same && monotone,
            fmt("sphere best %.3e after %zu iterations, deterministic %s, monotone %s", a.best_fitness,
                a.iterations_run, same ? "yes" : "NO", monotone ? "yes" : "NO")};
}

// --- 7: segmentation ----------------------------------------------------------

Outcome segmentation_suite()
{
    TimeSeries ramp;
    for (int i = 0; i <= 300; ++i) {
        ramp.t.push_back(i * 0.01);
        ramp.v.push_back(150.0 * i / 300.0);
    }
    const auto p = segment_by_elbow_angle(ramp);
    const bool shape = p.weakest.size() == 1;
    const double b1 = shape ? p.weakest[0].start : NAN;
    const double b2 = shape ? p.weakest[0].end : NAN;
    const double dev = check_peak_placement(standard_plan(PlanningProblem{})).deviation_deg;
    const bool ok = shape && std::abs(b1 - 0.8) <= 0.01 && std::abs(b2 - 1.8) <= 0.01 && std::abs(dev - 13.0) <= 0.1;
    return {ok, fmt("ramp boundaries %.4f s / %.4f s (expect 0.8 / 1.8 within 0.01), standard deviation %.4f deg",
                    b1, b2, dev)};
}

// --- 8: signal ----------------------------------------------------------------

Outcome signal_suite()
{
    const auto sine = [](double f) {
        TimeSeries s;
        for (int i = 0; i <= 1000; ++i) {
            s.t.push_back(i / 100.0);
            s.v.push_back(std::sin(2 * kPi * f * i / 100.0));
        }
        return s;
    };
    const auto amplitude = [](const TimeSeries& s) {
        double a = 0.0;
        for (std::size_t i = s.size() / 4; i < 3 * s.size() / 4; ++i) a = std::max(a, std::abs(s.v[i]));
        return a;
    };
    const double pass = amplitude(lowpass_zero_phase(sine(1.0), kMotionFilter));
    const double stop = amplitude(lowpass_zero_phase(sine(40.0), kMotionFilter));

    TimeSeries burst;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> jitter(-0.3, 0.3);
    for (int i = 0; i <= 3000; ++i) {
        const double t = i / 1000.0;
        burst.t.push_back(t);
        burst.v.push_back(std::exp(-0.5 * std::pow((t - 1.5) / 0.2, 2)) * std::sin(2 * kPi * 80.0 * t + jitter(rng)));
    }
    const auto env = emg_envelope(burst);
    const auto peak = std::max_element(env.v.begin(), env.v.end()) - env.v.begin();
    const double t_peak = env.t[static_cast<std::size_t>(peak)];

    const bool ok = pass >= 0.98 && stop <= 0.05 && std::abs(t_peak - 1.5) <= 0.05;
    return {ok, fmt("1 Hz kept %.4f, 40 Hz kept %.4f, burst envelope peak %.3f s (centre 1.5)", pass, stop, t_peak)};
}

}  // namespace

int main()
{
    const auto t0 = std::chrono::steady_clock::now();
    const Benchmark bench = run_benchmark();

    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"1 energy reduction >= 8% on benchmark", [&] { return energy_reduction(bench); }},
        {"2 optimized peak power below standard", [&] { return peak_power(bench); }},
        {"3 elbow speed peak near 62 deg", [&] { return peak_placement(bench); }},
        {"4 dynamics suite", dynamics_suite},
        {"5 quintic suite", quintic_suite},
        {"6 pso suite", pso_suite},
        {"7 segmentation suite", segmentation_suite},
        {"8 signal suite", signal_suite},
    };

    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s  criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d/%zu criteria passed in %.1f s\n", static_cast<int>(std::size(criteria)) - failed,
                std::size(criteria), total);
    return failed == 0 ? 0 : 1;
}
