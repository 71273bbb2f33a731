#include "biotraj/phase.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "biotraj/error.hpp"

namespace biotraj {

void PhaseSpec::validate() const
{
    const auto ok = [](const AngleRange& r) { return std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo < r.hi; };
    if (!ok(high_load) || !ok(weakest) || !ok(decel)) {
        throw Error(ErrorCode::invalid_config, "phase ranges must be finite with lo < hi");
    }
    if (high_load.hi != weakest.lo || weakest.hi != decel.lo) {
        throw Error(ErrorCode::invalid_config, "phase ranges must be contiguous and increasing");
    }
    if (!(target_peak_angle >= weakest.lo && target_peak_angle < weakest.hi)) {
        throw Error(ErrorCode::invalid_config, "target peak angle must lie inside the weakest-load range");
    }
    if (!(hysteresis >= 0.0)) throw Error(ErrorCode::invalid_config, "hysteresis must be non-negative");
}

namespace {

// Cells: -1 below range, 0 high-load, 1 weakest, 2 deceleration (closed above), 3 above range.
class PhaseCells {
public:
    explicit PhaseCells(const PhaseSpec& spec)
        : edges_{spec.high_load.lo, spec.weakest.lo, spec.decel.lo, spec.decel.hi}, h_(spec.hysteresis) {}

    [[nodiscard]] int cell_of(double v) const
    {
        if (v < edges_[0]) return -1;
        if (v < edges_[1]) return 0;
        if (v < edges_[2]) return 1;
        if (v <= edges_[3]) return 2;
        return 3;
    }

    [[nodiscard]] int initial_cell(double v) const
    {
        if (v < edges_[0] && v >= edges_[0] - h_) return 0;
        if (v > edges_[3] && v <= edges_[3] + h_) return 2;
        return cell_of(v);
    }

    [[nodiscard]] double lower(int cell) const
    {
        return cell <= -1 ? -std::numeric_limits<double>::infinity() : edges_[static_cast<std::size_t>(cell)];
    }
    [[nodiscard]] double upper(int cell) const
    {
        return cell >= 3 ? std::numeric_limits<double>::infinity() : edges_[static_cast<std::size_t>(cell + 1)];
    }

    [[nodiscard]] bool left_with_margin(int cell, double v) const
    {
        return v < lower(cell) - h_ || v > upper(cell) + h_;
    }

private:
    std::array<double, 4> edges_;
    double h_;
};

std::vector<TimeWindow>* windows_for(PhaseIntervals& out, int cell)
{
    switch (cell) {
    case 0: return &out.high_load;
    case 1: return &out.weakest;
    case 2: return &out.decel;
    default: return nullptr;
    }
}

void close_window(PhaseIntervals& out, int cell, double start, double end)
{
    if (auto* w = windows_for(out, cell); w != nullptr && end > start) w->push_back({start, end});
}

}  // namespace

PhaseIntervals segment_by_elbow_angle(const TimeSeries& elbow, const PhaseSpec& spec)
{
    spec.validate();
    elbow.validate();
    PhaseIntervals out;
    if (elbow.size() == 0) return out;

    const PhaseCells cells(spec);
    const auto& t = elbow.t;
    const auto& v = elbow.v;
    int current = cells.initial_cell(v.front());
    double window_start = t.front();
    std::size_t last_inside = 0;

    for (std::size_t i = 1; i < v.size(); ++i) {
        const int raw = cells.cell_of(v[i]);
        if (raw == current) {
            last_inside = i;
            continue;
        }
        if (!cells.left_with_margin(current, v[i])) continue;

        // Walk each boundary between the old and new cell, locating its crossing
        // by linear interpolation after the last in-cell sample.
        const int dir = raw > current ? 1 : -1;
        std::size_t j = last_inside;
        for (int c = current; c != raw; c += dir) {
            const double edge = dir > 0 ? cells.upper(c) : cells.lower(c);
            double crossing = t[j];
            for (; j < i; ++j) {
                const double a = v[j] - edge;
                const double b = v[j + 1] - edge;
                const bool crosses = dir > 0 ? (a <= 0.0 && b > 0.0) || (a < 0.0 && b >= 0.0)
                                             : (a >= 0.0 && b < 0.0) || (a > 0.0 && b <= 0.0);
                if (crosses) {
                    crossing = t[j] + (edge - v[j]) / (v[j + 1] - v[j]) * (t[j + 1] - t[j]);
                    break;
                }
            }
            close_window(out, c, window_start, crossing);
            window_start = crossing;
        }
        current = raw;
        last_inside = i;
    }
    close_window(out, current, window_start, t.back());
    return out;
}

FeaturePoints extract_feature_points(const MotionRecording& motion,
                                     const std::optional<EmgRecording>& emg,
                                     const PhaseSpec& spec, const FeatureOptions& options)
{
    spec.validate();
    const TimeSeries& elbow = motion.elbow_angle;
    if (elbow.size() < 3) throw Error(ErrorCode::no_peak_found, "elbow recording too short for a velocity peak");
    const TimeSeries omega = numeric_derivative(elbow);

    std::size_t peak = 0;
    for (std::size_t i = 1; i < omega.size(); ++i) {
        if (std::abs(omega.v[i]) > std::abs(omega.v[peak])) peak = i;
    }
    const double peak_speed = std::abs(omega.v[peak]);
    if (peak == 0 || peak + 1 == omega.size() || !(peak_speed > 0.0)) {
        throw Error(ErrorCode::no_peak_found, "elbow speed has no interior maximum");
    }

    FeaturePoints fp;
    fp.velocity_peak = {elbow.t[peak], elbow.v[peak], peak_speed};

    const TimeSeries alpha = numeric_derivative(omega);
    std::size_t ramp = 0;
    while (ramp < omega.size() && std::abs(omega.v[ramp]) <= options.ramp_start_fraction * peak_speed) ++ramp;
    for (std::size_t j = ramp; j + 1 < alpha.size(); ++j) {
        const double a = alpha.v[j];
        const double b = alpha.v[j + 1];
        if (a != 0.0 && (a * b < 0.0 || b == 0.0)) {
            fp.accel_zero_crossing = alpha.t[j] + a / (a - b) * (alpha.t[j + 1] - alpha.t[j]);
            break;
        }
    }

    if (emg) {
        const std::array<std::pair<const char*, const TimeSeries*>, 4> channels{{
            {"deltoid", &emg->deltoid},
            {"triceps", &emg->triceps},
            {"biceps", &emg->biceps},
            {"brachioradialis", &emg->brachioradialis},
        }};
        for (const auto& [name, series] : channels) {
            const TimeSeries env = emg_envelope(*series, options.emg_filter);
            const double top = *std::max_element(env.v.begin(), env.v.end());
            std::vector<Peak> peaks;
            if (top > 0.0) peaks = detect_peaks(env, options.emg_prominence_fraction * top);
            fp.emg_peaks.emplace_back(name, std::move(peaks));
        }
    }
    return fp;
}

PeakPlacement check_peak_placement(const SampledTrajectory& traj, const PhaseSpec& spec)
{
    if (traj.joints.empty() || traj.size() == 0) {
        throw Error(ErrorCode::invalid_argument, "empty trajectory");
    }
    const auto& elbow = traj.joints.back();
    std::size_t peak = 0;
    for (std::size_t i = 1; i < elbow.omega.size(); ++i) {
        if (std::abs(elbow.omega[i]) > std::abs(elbow.omega[peak])) peak = i;
    }
    PeakPlacement p;
    p.peak_time = traj.t[peak];
    p.peak_angle_deg = elbow.theta[peak] * 180.0 / std::numbers::pi;
    p.deviation_deg = std::abs(p.peak_angle_deg - spec.target_peak_angle);
    return p;
}

}  // namespace biotraj
