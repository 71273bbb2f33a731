#include "biotraj/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "biotraj/error.hpp"

namespace biotraj {
namespace {

bool finite(const BoundaryCondition& bc)
{
    return std::isfinite(bc.theta) && std::isfinite(bc.omega) && std::isfinite(bc.alpha);
}

// Dense Gaussian elimination with partial pivoting; A is row-major N x N.
template <std::size_t N>
std::array<double, N> solve_dense(std::array<std::array<double, N>, N> a, std::array<double, N> b)
{
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < N; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (a[pivot][col] == 0.0) {
            throw Error(ErrorCode::invalid_argument, "singular boundary-condition system");
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < N; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < N; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::array<double, N> x{};
    for (std::size_t i = N; i-- > 0;) {
        double acc = b[i];
        for (std::size_t c = i + 1; c < N; ++c) acc -= a[i][c] * x[c];
        x[i] = acc / a[i][i];
    }
    return x;
}

double time_slack(double t0, double tf)
{
    return 1e-12 * std::max({1.0, std::abs(t0), std::abs(tf)});
}

}  // namespace

QuinticSegment solve_quintic(const BoundaryCondition& bc0, const BoundaryCondition& bcf,
                             double t0, double tf)
{
    if (!std::isfinite(t0) || !std::isfinite(tf) || !(tf > t0)) {
        throw Error(ErrorCode::invalid_argument, "solve_quintic requires finite tf > t0");
    }
    if (!finite(bc0) || !finite(bcf)) {
        throw Error(ErrorCode::invalid_argument, "solve_quintic requires finite boundary values");
    }
    const double T = tf - t0;
    const double T2 = T * T, T3 = T2 * T, T4 = T3 * T, T5 = T4 * T;
    const std::array<std::array<double, 6>, 6> a{{
        {1, 0, 0, 0, 0, 0},
        {0, 1, 0, 0, 0, 0},
        {0, 0, 2, 0, 0, 0},
        {1, T, T2, T3, T4, T5},
        {0, 1, 2 * T, 3 * T2, 4 * T3, 5 * T4},
        {0, 0, 2, 6 * T, 12 * T2, 20 * T3},
    }};
    const std::array<double, 6> b{bc0.theta, bc0.omega, bc0.alpha, bcf.theta, bcf.omega, bcf.alpha};
    return QuinticSegment{t0, tf, solve_dense(a, b)};
}

JointKinematics eval(const QuinticSegment& seg, double t)
{
    const double slack = time_slack(seg.t0, seg.tf);
    if (!(t >= seg.t0 - slack && t <= seg.tf + slack)) {
        throw Error(ErrorCode::out_of_span, "time " + std::to_string(t) + " outside segment span");
    }
    const double s = t - seg.t0;
    const auto& d = seg.d;
    JointKinematics k;
    k.theta = d[0] + s * (d[1] + s * (d[2] + s * (d[3] + s * (d[4] + s * d[5]))));
    k.omega = d[1] + s * (2 * d[2] + s * (3 * d[3] + s * (4 * d[4] + s * 5 * d[5])));
    k.alpha = 2 * d[2] + s * (6 * d[3] + s * (12 * d[4] + s * 20 * d[5]));
    return k;
}

JointPath::JointPath(std::vector<QuinticSegment> segments) : segments_(std::move(segments))
{
    if (segments_.empty()) {
        throw Error(ErrorCode::invalid_argument, "JointPath needs at least one segment");
    }
    for (std::size_t i = 1; i < segments_.size(); ++i) {
        const double gap = std::abs(segments_[i].t0 - segments_[i - 1].tf);
        if (gap > time_slack(segments_[i].t0, segments_[i - 1].tf)) {
            throw Error(ErrorCode::invalid_argument, "JointPath segments are not contiguous");
        }
    }
}

JointKinematics JointPath::eval(double t) const
{
    // Junction instants belong to the later segment.
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double v, const QuinticSegment& s) { return v < s.t0; });
    const auto& seg = (it == segments_.begin()) ? segments_.front() : *std::prev(it);
    return biotraj::eval(seg, t);
}

JointPath two_segment_via(const BoundaryCondition& bc0, const BoundaryCondition& via,
                          double t_via, const BoundaryCondition& bcf, double duration)
{
    if (!std::isfinite(duration) || !(duration > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "duration must be positive");
    }
    if (!std::isfinite(t_via) || !(t_via > 1e-9 * duration) || !(t_via < duration * (1.0 - 1e-9))) {
        throw Error(ErrorCode::invalid_argument, "via time must lie strictly inside (0, T)");
    }
    return JointPath({solve_quintic(bc0, via, 0.0, t_via), solve_quintic(via, bcf, t_via, duration)});
}

bool SampledTrajectory::has_torques() const noexcept
{
    return !joints.empty() && std::all_of(joints.begin(), joints.end(), [&](const JointSamples& j) {
        return j.tau.size() == t.size();
    });
}

void validate_uniform(const SampledTrajectory& traj)
{
    const std::size_t n = traj.t.size();
    if (n < 2) throw Error(ErrorCode::invalid_argument, "trajectory needs at least 2 samples");
    if (!(traj.dt > 0.0) || !std::isfinite(traj.dt)) {
        throw Error(ErrorCode::non_uniform_time_step, "time step must be positive");
    }
    for (const auto& j : traj.joints) {
        if (j.theta.size() != n || j.omega.size() != n || j.alpha.size() != n ||
            (!j.tau.empty() && j.tau.size() != n)) {
            throw Error(ErrorCode::invalid_argument, "trajectory arrays have unequal lengths");
        }
    }
    const double tol = 1e-9 * traj.dt + 1e-12 * std::abs(traj.t.back());
    for (std::size_t i = 1; i < n; ++i) {
        const double step = traj.t[i] - traj.t[i - 1];
        if (!(step > 0.0)) {
            throw Error(ErrorCode::non_uniform_time_step, "non-positive time step");
        }
        const bool last = (i + 1 == n);
        if (last && traj.final_step_short) {
            if (step > traj.dt + tol) {
                throw Error(ErrorCode::non_uniform_time_step, "final step longer than dt");
            }
        } else if (std::abs(step - traj.dt) > tol) {
            throw Error(ErrorCode::non_uniform_time_step, "non-uniform time step");
        }
    }
}

namespace {

// Uniform grid over [t0, tf] with the last sample pinned to tf.
std::vector<double> make_grid(double t0, double tf, double dt, bool& final_short)
{
    const double span = tf - t0;
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw Error(ErrorCode::invalid_argument, "sampling step must be positive");
    }
    if (dt >= span) throw Error(ErrorCode::invalid_argument, "sampling step must be shorter than the span");
    const auto steps = static_cast<std::size_t>(std::floor(span / dt + 1e-9));
    std::vector<double> grid;
    grid.reserve(steps + 2);
    for (std::size_t k = 0; k <= steps; ++k) grid.push_back(t0 + static_cast<double>(k) * dt);
    const double residual = span - static_cast<double>(steps) * dt;
    if (residual > 1e-9 * dt) {
        grid.push_back(tf);
        final_short = true;
    } else {
        grid.back() = tf;
        final_short = false;
    }
    return grid;
}

}  // namespace

SampledTrajectory sample(const PiecewiseTrajectory& traj, double dt)
{
    if (traj.joints.empty()) throw Error(ErrorCode::invalid_argument, "trajectory has no joints");
    SampledTrajectory out;
    out.dt = dt;
    out.t = make_grid(traj.start_time(), traj.end_time(), dt, out.final_step_short);
    out.joints.resize(traj.joints.size());
    for (std::size_t j = 0; j < traj.joints.size(); ++j) {
        auto& js = out.joints[j];
        js.theta.reserve(out.t.size());
        js.omega.reserve(out.t.size());
        js.alpha.reserve(out.t.size());
        for (double t : out.t) {
            const auto k = traj.joints[j].eval(t);
            js.theta.push_back(k.theta);
            js.omega.push_back(k.omega);
            js.alpha.push_back(k.alpha);
        }
    }
    return out;
}

ProfileKind parse_profile_kind(std::string_view name)
{
    for (auto kind : kAllProfileKinds) {
        if (to_string(kind) == name) return kind;
    }
    throw Error(ErrorCode::unknown_kind, "unknown profile kind '" + std::string(name) + "'");
}

std::string_view to_string(ProfileKind kind) noexcept
{
    switch (kind) {
    case ProfileKind::trapezoid: return "trapezoid";
    case ProfileKind::s_curve: return "s_curve";
    case ProfileKind::triangle: return "triangle";
    case ProfileKind::cubic: return "cubic";
    case ProfileKind::quintic: return "quintic";
    }
    return "unknown";
}

namespace {

// Displacement-normalized kinematics of each family; `dist` = thetaf - theta0.
JointKinematics trapezoid_at(double t, double T, double dist)
{
    const double ta = T / 3.0;
    const double vc = dist / (T - ta);
    const double a = vc / ta;
    if (t < ta) return {0.5 * a * t * t, a * t, a};
    if (t <= T - ta) return {0.5 * a * ta * ta + vc * (t - ta), vc, 0.0};
    const double r = T - t;
    return {dist - 0.5 * a * r * r, a * r, -a};
}

JointKinematics s_curve_at(double t, double T, double dist)
{
    using std::numbers::pi;
    const double ta = T / 3.0;
    const double vc = dist / (T - ta);
    const auto ramp = [&](double s) {
        return JointKinematics{0.5 * vc * (s - ta / pi * std::sin(pi * s / ta)),
                               0.5 * vc * (1.0 - std::cos(pi * s / ta)),
                               0.5 * vc * pi / ta * std::sin(pi * s / ta)};
    };
    if (t < ta) return ramp(t);
    if (t <= T - ta) return {0.5 * vc * ta + vc * (t - ta), vc, 0.0};
    const auto m = ramp(T - t);
    return {dist - m.theta, m.omega, -m.alpha};
}

JointKinematics triangle_at(double t, double T, double dist)
{
    const double a = 4.0 * dist / (T * T);
    if (t <= 0.5 * T) return {0.5 * a * t * t, a * t, a};
    const double r = T - t;
    return {dist - 0.5 * a * r * r, a * r, -a};
}

JointKinematics cubic_at(double t, double T, double dist)
{
    const double s = t / T;
    return {dist * (3 * s * s - 2 * s * s * s), dist * (6 * s - 6 * s * s) / T,
            dist * (6 - 12 * s) / (T * T)};
}

}  // namespace

SampledTrajectory classic_profile(ProfileKind kind, double theta0, double thetaf,
                                  double duration, double dt)
{
    if (!std::isfinite(duration) || !(duration > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "profile duration must be positive");
    }
    if (!std::isfinite(theta0) || !std::isfinite(thetaf)) {
        throw Error(ErrorCode::invalid_argument, "profile endpoints must be finite");
    }
    const double dist = thetaf - theta0;
    const QuinticSegment quintic = solve_quintic({theta0, 0, 0}, {thetaf, 0, 0}, 0.0, duration);

    SampledTrajectory out;
    out.dt = dt;
    out.t = make_grid(0.0, duration, dt, out.final_step_short);
    out.joints.resize(1);
    auto& js = out.joints.front();
    for (double t : out.t) {
        JointKinematics k;
        switch (kind) {
        case ProfileKind::trapezoid: k = trapezoid_at(t, duration, dist); break;
        case ProfileKind::s_curve: k = s_curve_at(t, duration, dist); break;
        case ProfileKind::triangle: k = triangle_at(t, duration, dist); break;
        case ProfileKind::cubic: k = cubic_at(t, duration, dist); break;
        case ProfileKind::quintic: k = eval(quintic, t); k.theta -= theta0; break;
        }
        js.theta.push_back(theta0 + k.theta);
        js.omega.push_back(k.omega);
        js.alpha.push_back(k.alpha);
    }
    return out;
}

}  // namespace biotraj
