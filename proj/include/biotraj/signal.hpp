#pragma once

#include <filesystem>
#include <optional>
#include <vector>

namespace biotraj {

/// Strictly increasing time stamps with one value each.
struct TimeSeries {
    std::vector<double> t;
    std::vector<double> v;

    [[nodiscard]] std::size_t size() const noexcept { return t.size(); }
    /// Throws on unequal lengths, non-finite values or non-increasing time.
    void validate() const;
    /// Linear interpolation, clamped to the end values outside the span.
    [[nodiscard]] double value_at(double time) const;
};

struct MotionRecording {
    TimeSeries shoulder_angle;  // deg
    TimeSeries elbow_angle;     // deg
    std::optional<TimeSeries> wrist_accel;  // m/s^2
};

struct EmgRecording {
    TimeSeries deltoid;
    TimeSeries triceps;
    TimeSeries biceps;
    TimeSeries brachioradialis;
};

struct FilterSpec {
    double cutoff_hz = 6.0;
    int order = 2;
};

inline constexpr FilterSpec kMotionFilter{6.0, 2};
inline constexpr FilterSpec kEmgEnvelopeFilter{4.0, 2};

struct Peak {
    double time = 0.0;
    double value = 0.0;
    double prominence = 0.0;
};

MotionRecording load_motion_csv(const std::filesystem::path& path);
EmgRecording load_emg_csv(const std::filesystem::path& path);

/// Generic `t,<col>...` CSV; returns one series per non-time column.
std::vector<std::pair<std::string, TimeSeries>> load_series_csv(const std::filesystem::path& path);

/// True when every step is within 1e-6 (relative) of the median step.
bool is_uniform(const TimeSeries& series);

/// Linear resampling onto a uniform grid at the median sampling interval.
TimeSeries resample_uniform(const TimeSeries& series);

/**
 * Butterworth low-pass run forward then backward (zero phase), with odd
 * reflection padding at both ends. Non-uniform input is resampled first.
 */
TimeSeries lowpass_zero_phase(const TimeSeries& series, const FilterSpec& spec);

/// Full-wave rectification, zero-phase low-pass, then clamp at zero.
TimeSeries emg_envelope(const TimeSeries& channel, const FilterSpec& spec = kEmgEnvelopeFilter);

/// Local maxima whose topographic prominence reaches `min_prominence`, in time order.
std::vector<Peak> detect_peaks(const TimeSeries& series, double min_prominence);

/// Central differences inside, second-order one-sided differences at the ends.
TimeSeries numeric_derivative(const TimeSeries& series);

}  // namespace biotraj
