#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biotraj/signal.hpp"
#include "biotraj/trajectory.hpp"

namespace biotraj {

struct AngleRange {
    double lo = 0.0;  // deg
    double hi = 0.0;  // deg
};

/// Elbow-angle phase model: high-load [lo,hi), weakest [lo,hi), deceleration [lo,hi].
struct PhaseSpec {
    AngleRange high_load{0.0, 40.0};
    AngleRange weakest{40.0, 90.0};
    AngleRange decel{90.0, 150.0};
    double target_peak_angle = 62.0;  // deg, inside `weakest`
    double hysteresis = 1.0;          // deg

    void validate() const;
};

struct TimeWindow {
    double start = 0.0;
    double end = 0.0;
};

struct PhaseIntervals {
    std::vector<TimeWindow> high_load;
    std::vector<TimeWindow> weakest;
    std::vector<TimeWindow> decel;
};

struct VelocityPeak {
    double time = 0.0;       // s
    double angle_deg = 0.0;  // elbow angle at that time
    double speed = 0.0;      // deg/s
};

struct FeaturePoints {
    VelocityPeak velocity_peak;
    std::vector<std::pair<std::string, std::vector<Peak>>> emg_peaks;
    std::optional<double> accel_zero_crossing;  // s
};

struct FeatureOptions {
    FilterSpec emg_filter = kEmgEnvelopeFilter;
    double emg_prominence_fraction = 0.1;  // of each envelope's maximum
    double ramp_start_fraction = 0.05;     // of the peak speed
};

PhaseIntervals segment_by_elbow_angle(const TimeSeries& elbow_deg, const PhaseSpec& spec = {});

/// Throws no_peak_found when the elbow speed has no interior maximum.
FeaturePoints extract_feature_points(const MotionRecording& motion,
                                     const std::optional<EmgRecording>& emg,
                                     const PhaseSpec& spec = {}, const FeatureOptions& options = {});

struct PeakPlacement {
    double peak_angle_deg = 0.0;
    double deviation_deg = 0.0;
    double peak_time = 0.0;
};

/// Elbow (last joint) angle at the sample of maximum |omega|, against the target.
PeakPlacement check_peak_placement(const SampledTrajectory& traj, const PhaseSpec& spec = {});

}  // namespace biotraj
