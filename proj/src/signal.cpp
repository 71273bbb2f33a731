#include "biotraj/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "biotraj/error.hpp"
#include "csv.hpp"

namespace biotraj {

void TimeSeries::validate() const
{
    if (t.size() != v.size()) throw Error(ErrorCode::invalid_argument, "time series lengths differ");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(t[i]) || !std::isfinite(v[i])) {
            throw Error(ErrorCode::invalid_argument, "time series contains non-finite values");
        }
        if (i > 0 && !(t[i] > t[i - 1])) {
            throw Error(ErrorCode::non_monotonic_time,
                        "time stamps must be strictly increasing (at t=" + std::to_string(t[i]) + ")");
        }
    }
}

double TimeSeries::value_at(double time) const
{
    if (t.empty()) throw Error(ErrorCode::invalid_argument, "empty time series");
    if (time <= t.front()) return v.front();
    if (time >= t.back()) return v.back();
    const auto it = std::upper_bound(t.begin(), t.end(), time);
    const auto i = static_cast<std::size_t>(it - t.begin());
    const double w = (time - t[i - 1]) / (t[i] - t[i - 1]);
    return v[i - 1] + w * (v[i] - v[i - 1]);
}

namespace {

TimeSeries column_series(const detail::CsvTable& table, std::size_t time_col, std::size_t col)
{
    TimeSeries s;
    s.t.reserve(table.rows.size());
    s.v.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        s.t.push_back(row[time_col]);
        s.v.push_back(row[col]);
    }
    s.validate();
    return s;
}

void reject_unknown_columns(const detail::CsvTable& table, const std::vector<std::string>& allowed,
                            const std::filesystem::path& path)
{
    for (const auto& name : table.header) {
        if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
            throw Error(ErrorCode::malformed_header, path.string() + ": unexpected column '" + name + "'");
        }
    }
}

}  // namespace

MotionRecording load_motion_csv(const std::filesystem::path& path)
{
    const auto table = detail::read_csv(path);
    reject_unknown_columns(table, {"t", "shoulder_angle", "elbow_angle", "wrist_accel"}, path);
    const auto t = detail::require_column(table, "t", path);
    MotionRecording rec;
    rec.shoulder_angle = column_series(table, t, detail::require_column(table, "shoulder_angle", path));
    rec.elbow_angle = column_series(table, t, detail::require_column(table, "elbow_angle", path));
    if (std::find(table.header.begin(), table.header.end(), "wrist_accel") != table.header.end()) {
        rec.wrist_accel = column_series(table, t, detail::require_column(table, "wrist_accel", path));
    }
    return rec;
}

EmgRecording load_emg_csv(const std::filesystem::path& path)
{
    const auto table = detail::read_csv(path);
    reject_unknown_columns(table, {"t", "deltoid", "triceps", "biceps", "brachioradialis"}, path);
    const auto t = detail::require_column(table, "t", path);
    EmgRecording rec;
    rec.deltoid = column_series(table, t, detail::require_column(table, "deltoid", path));
    rec.triceps = column_series(table, t, detail::require_column(table, "triceps", path));
    rec.biceps = column_series(table, t, detail::require_column(table, "biceps", path));
    rec.brachioradialis = column_series(table, t, detail::require_column(table, "brachioradialis", path));
    return rec;
}

std::vector<std::pair<std::string, TimeSeries>> load_series_csv(const std::filesystem::path& path)
{
    const auto table = detail::read_csv(path);
    const auto t = detail::require_column(table, "t", path);
    std::vector<std::pair<std::string, TimeSeries>> out;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c == t) continue;
        out.emplace_back(table.header[c], column_series(table, t, c));
    }
    return out;
}

namespace {

double median_step(const TimeSeries& s)
{
    std::vector<double> steps(s.size() - 1);
    for (std::size_t i = 1; i < s.size(); ++i) steps[i - 1] = s.t[i] - s.t[i - 1];
    const auto mid = steps.begin() + static_cast<std::ptrdiff_t>(steps.size() / 2);
    std::nth_element(steps.begin(), mid, steps.end());
    if (steps.size() % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(steps.begin(), mid);
    return 0.5 * (lower + upper);
}

// Direct-form II transposed second-order section.
struct Biquad {
    double b0, b1, b2, a1, a2;
    double z1 = 0.0, z2 = 0.0;

    double step(double x)
    {
        const double y = b0 * x + z1;
        z1 = b1 * x - a1 * y + z2;
        z2 = b2 * x - a2 * y;
        return y;
    }

    [[nodiscard]] double dc_gain() const { return (b0 + b1 + b2) / (1.0 + a1 + a2); }

    // State that makes a constant input x produce a constant output.
    void settle(double x)
    {
        const double y = dc_gain() * x;
        z1 = y - b0 * x;
        z2 = b2 * x - a2 * y;
    }
};

std::vector<Biquad> butterworth_lowpass(double cutoff_hz, int order, double fs)
{
    using std::numbers::pi;
    const double k = std::tan(pi * cutoff_hz / fs);
    const double k2 = k * k;
    std::vector<Biquad> sections;
    for (int i = 0; i < order / 2; ++i) {
        const double q = 1.0 / (2.0 * std::sin((2.0 * i + 1.0) * pi / (2.0 * order)));
        const double norm = 1.0 / (1.0 + k / q + k2);
        const double b0 = k2 * norm;
        sections.push_back({b0, 2.0 * b0, b0, 2.0 * (k2 - 1.0) * norm, (1.0 - k / q + k2) * norm});
    }
    if (order % 2 == 1) {
        const double norm = 1.0 / (1.0 + k);
        sections.push_back({k * norm, k * norm, 0.0, (k - 1.0) * norm, 0.0});
    }
    return sections;
}

void run_cascade(std::vector<Biquad> sections, std::vector<double>& x)
{
    double level = x.front();
    for (auto& s : sections) {
        s.settle(level);
        level *= s.dc_gain();
    }
    for (double& sample : x) {
        for (auto& s : sections) sample = s.step(sample);
    }
}

}  // namespace

bool is_uniform(const TimeSeries& series)
{
    if (series.size() < 3) return true;
    const double h = median_step(series);
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (std::abs(series.t[i] - series.t[i - 1] - h) > 1e-6 * h) return false;
    }
    return true;
}

TimeSeries resample_uniform(const TimeSeries& series)
{
    series.validate();
    if (series.size() < 2) return series;
    const double h = median_step(series);
    const double span = series.t.back() - series.t.front();
    const auto n = static_cast<std::size_t>(std::floor(span / h + 1e-9)) + 1;
    TimeSeries out;
    out.t.reserve(n);
    out.v.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double time = series.t.front() + static_cast<double>(k) * h;
        out.t.push_back(time);
        out.v.push_back(series.value_at(time));
    }
    return out;
}

TimeSeries lowpass_zero_phase(const TimeSeries& series, const FilterSpec& spec)
{
    series.validate();
    if (series.size() < 2) throw Error(ErrorCode::invalid_argument, "filtering needs at least 2 samples");
    if (spec.order < 1) throw Error(ErrorCode::invalid_argument, "filter order must be positive");
    if (!(spec.cutoff_hz > 0.0)) throw Error(ErrorCode::invalid_argument, "cutoff must be positive");

    TimeSeries out = is_uniform(series) ? series : resample_uniform(series);
    const double fs = 1.0 / median_step(out);
    if (spec.cutoff_hz >= 0.5 * fs) {
        throw Error(ErrorCode::cutoff_above_nyquist,
                    "cutoff " + std::to_string(spec.cutoff_hz) + " Hz is not below Nyquist (" +
                        std::to_string(0.5 * fs) + " Hz)");
    }
    const auto sections = butterworth_lowpass(spec.cutoff_hz, spec.order, fs);

    const std::size_t n = out.size();
    const std::size_t pad = std::min<std::size_t>(3 * (static_cast<std::size_t>(spec.order) + 1), n - 1);
    std::vector<double> x;
    x.reserve(n + 2 * pad);
    const double first = out.v.front();
    const double last = out.v.back();
    for (std::size_t i = pad; i >= 1; --i) x.push_back(2.0 * first - out.v[i]);
    x.insert(x.end(), out.v.begin(), out.v.end());
    for (std::size_t i = 1; i <= pad; ++i) x.push_back(2.0 * last - out.v[n - 1 - i]);

    run_cascade(sections, x);
    std::reverse(x.begin(), x.end());
    run_cascade(sections, x);
    std::reverse(x.begin(), x.end());

    std::copy(x.begin() + static_cast<std::ptrdiff_t>(pad),
              x.begin() + static_cast<std::ptrdiff_t>(pad + n), out.v.begin());
    return out;
}

TimeSeries emg_envelope(const TimeSeries& channel, const FilterSpec& spec)
{
    TimeSeries rectified = channel;
    for (double& v : rectified.v) v = std::abs(v);
    TimeSeries env = lowpass_zero_phase(rectified, spec);
    for (double& v : env.v) v = std::max(v, 0.0);
    return env;
}

std::vector<Peak> detect_peaks(const TimeSeries& series, double min_prominence)
{
    series.validate();
    std::vector<Peak> peaks;
    const auto& v = series.v;
    const std::size_t n = v.size();
    if (n < 3) return peaks;

    std::size_t i = 1;
    while (i + 1 < n) {
        if (!(v[i - 1] < v[i])) {
            ++i;
            continue;
        }
        // Walk across a plateau; a peak needs a strict drop after it.
        std::size_t ahead = i + 1;
        while (ahead < n && v[ahead] == v[i]) ++ahead;
        if (ahead < n && v[ahead] < v[i]) {
            const std::size_t peak = (i + ahead - 1) / 2;
            const double h = v[peak];

            double left_min = h;
            for (std::size_t k = i; k-- > 0;) {
                if (v[k] > h) break;
                left_min = std::min(left_min, v[k]);
            }
            double right_min = h;
            for (std::size_t k = ahead; k < n; ++k) {
                if (v[k] > h) break;
                right_min = std::min(right_min, v[k]);
            }
            const double prominence = h - std::max(left_min, right_min);
            if (prominence > 0.0 && prominence >= min_prominence) {
                peaks.push_back({series.t[peak], h, prominence});
            }
        }
        i = ahead;
    }
    return peaks;
}

TimeSeries numeric_derivative(const TimeSeries& series)
{
    series.validate();
    const std::size_t n = series.size();
    if (n < 2) throw Error(ErrorCode::invalid_argument, "derivative needs at least 2 samples");
    const auto& t = series.t;
    const auto& f = series.v;
    TimeSeries out{t, std::vector<double>(n)};
    if (n == 2) {
        const double slope = (f[1] - f[0]) / (t[1] - t[0]);
        out.v = {slope, slope};
        return out;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h1 = t[i] - t[i - 1];
        const double h2 = t[i + 1] - t[i];
        out.v[i] = (-h2 / (h1 * (h1 + h2))) * f[i - 1] + ((h2 - h1) / (h1 * h2)) * f[i] +
                   (h1 / (h2 * (h1 + h2))) * f[i + 1];
    }
    {
        const double h1 = t[1] - t[0];
        const double h2 = t[2] - t[1];
        out.v[0] = -(2 * h1 + h2) / (h1 * (h1 + h2)) * f[0] + (h1 + h2) / (h1 * h2) * f[1] -
                   h1 / (h2 * (h1 + h2)) * f[2];
    }
    {
        const double h1 = t[n - 2] - t[n - 3];
        const double h2 = t[n - 1] - t[n - 2];
        out.v[n - 1] = h2 / (h1 * (h1 + h2)) * f[n - 3] - (h1 + h2) / (h1 * h2) * f[n - 2] +
                       (2 * h2 + h1) / (h2 * (h1 + h2)) * f[n - 1];
    }
    return out;
}

}  // namespace biotraj
