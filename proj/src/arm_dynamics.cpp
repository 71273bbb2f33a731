#include "biotraj/arm_dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "biotraj/error.hpp"

namespace biotraj {
namespace {

// Configuration-independent pieces of the mass matrix:
//   M11 = a + 2 b cos(theta2),  M12 = d + b cos(theta2),  M22 = d
struct InertiaConstants {
    double a, b, d;
};

InertiaConstants inertia_constants(const ArmModel& m)
{
    const double l1s = m.l1 * m.l1;
    const double l2s = m.l2 * m.l2;
    const double link1 = m.m1 * l1s / 3.0;
    const double link2_about_elbow = m.m2 * l2s / 3.0;
    InertiaConstants k{};
    k.a = link1 + m.m2 * l1s + link2_about_elbow + m.m_payload * (l1s + l2s);
    k.b = (0.5 * m.m2 + m.m_payload) * m.l1 * m.l2;
    k.d = link2_about_elbow + m.m_payload * l2s;
    return k;
}

}  // namespace

void ArmModel::validate() const
{
    const bool finite = std::isfinite(l1) && std::isfinite(l2) && std::isfinite(m1) &&
                        std::isfinite(m2) && std::isfinite(m_payload) && std::isfinite(g);
    if (!finite || !(l1 > 0.0) || !(l2 > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "arm link lengths must be finite and positive");
    }
    if (m1 < 0.0 || m2 < 0.0 || m_payload < 0.0) {
        throw Error(ErrorCode::invalid_argument, "arm masses must be non-negative");
    }
    if (g < 0.0) throw Error(ErrorCode::invalid_argument, "gravity must be non-negative");
}

double kinetic_energy(const ArmModel& model, const JointState& s)
{
    const auto k = inertia_constants(model);
    const double c2 = std::cos(s.theta2);
    const double M11 = k.a + 2.0 * k.b * c2;
    const double M12 = k.d + k.b * c2;
    return 0.5 * (M11 * s.omega1 * s.omega1 + 2.0 * M12 * s.omega1 * s.omega2 +
                  k.d * s.omega2 * s.omega2);
}

double potential_energy(const ArmModel& m, double theta1, double theta2)
{
    const double c1 = std::cos(theta1);
    const double c12 = std::cos(theta1 + theta2);
    return -m.g * (m.m1 * 0.5 * m.l1 * c1 + m.m2 * (m.l1 * c1 + 0.5 * m.l2 * c12) +
                   m.m_payload * (m.l1 * c1 + m.l2 * c12));
}

DynamicsTerms dynamics_terms(const ArmModel& m, double theta1, double theta2,
                             double omega1, double omega2)
{
    const auto k = inertia_constants(m);
    const double c2 = std::cos(theta2);
    const double h = k.b * std::sin(theta2);
    const double s1 = std::sin(theta1);
    const double s12 = std::sin(theta1 + theta2);

    DynamicsTerms out;
    out.M11 = k.a + 2.0 * k.b * c2;
    out.M12 = k.d + k.b * c2;
    out.M21 = out.M12;
    out.M22 = k.d;
    out.C1 = -h * (2.0 * omega1 * omega2 + omega2 * omega2);
    out.C2 = h * omega1 * omega1;
    const double forearm_moment = 0.5 * m.m2 * m.l2 + m.m_payload * m.l2;
    out.G1 = m.g * ((0.5 * m.m1 + m.m2 + m.m_payload) * m.l1 * s1 + forearm_moment * s12);
    out.G2 = m.g * forearm_moment * s12;
    return out;
}

JointTorques inverse_dynamics(const ArmModel& model, const JointState& s)
{
    const auto d = dynamics_terms(model, s.theta1, s.theta2, s.omega1, s.omega2);
    return {d.M11 * s.alpha1 + d.M12 * s.alpha2 + d.C1 + d.G1,
            d.M21 * s.alpha1 + d.M22 * s.alpha2 + d.C2 + d.G2};
}

JointAccelerations forward_dynamics(const ArmModel& model, double theta1, double theta2,
                                    double omega1, double omega2, double tau1, double tau2)
{
    const auto d = dynamics_terms(model, theta1, theta2, omega1, omega2);
    // Eigenvalues of the symmetric 2x2 mass matrix.
    const double mean = 0.5 * (d.M11 + d.M22);
    const double radius = std::hypot(0.5 * (d.M11 - d.M22), d.M12);
    const double lmax = mean + radius;
    const double lmin = mean - radius;
    if (!(lmin > 0.0) || lmax / lmin > kMaxMassMatrixCondition) {
        throw Error(ErrorCode::ill_conditioned_mass_matrix,
                    "mass matrix is singular or ill-conditioned; check link masses");
    }
    const double det = d.M11 * d.M22 - d.M12 * d.M21;
    const double r1 = tau1 - d.C1 - d.G1;
    const double r2 = tau2 - d.C2 - d.G2;
    return {(d.M22 * r1 - d.M12 * r2) / det, (d.M11 * r2 - d.M21 * r1) / det};
}

SampledTrajectory attach_torques(const ArmModel& model, SampledTrajectory traj)
{
    if (traj.joints.size() != 2) {
        throw Error(ErrorCode::invalid_argument, "arm dynamics need a two-joint trajectory");
    }
    auto& j1 = traj.joints[0];
    auto& j2 = traj.joints[1];
    const std::size_t n = traj.size();
    j1.tau.resize(n);
    j2.tau.resize(n);
    traj.power.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const JointState s{j1.theta[i], j2.theta[i], j1.omega[i], j2.omega[i], j1.alpha[i], j2.alpha[i]};
        const auto tau = inverse_dynamics(model, s);
        j1.tau[i] = tau.tau1;
        j2.tau[i] = tau.tau2;
        traj.power[i] = std::abs(tau.tau1 * s.omega1) + std::abs(tau.tau2 * s.omega2);
    }
    return traj;
}

EnergyReport energy_report(const std::vector<double>& t,
                           const std::vector<std::vector<double>>& tau,
                           const std::vector<std::vector<double>>& omega)
{
    const std::size_t n = t.size();
    if (n < 2) throw Error(ErrorCode::invalid_argument, "energy report needs at least 2 samples");
    if (tau.size() != omega.size()) {
        throw Error(ErrorCode::invalid_argument, "torque and velocity joint counts differ");
    }
    EnergyReport r;
    r.power_series.assign(n, 0.0);
    r.work_per_joint.assign(tau.size(), 0.0);
    for (std::size_t j = 0; j < tau.size(); ++j) {
        if (tau[j].size() != n || omega[j].size() != n) {
            throw Error(ErrorCode::invalid_argument, "torque/velocity series length mismatch");
        }
        double prev = std::abs(tau[j][0] * omega[j][0]);
        r.power_series[0] += prev;
        for (std::size_t i = 1; i < n; ++i) {
            const double p = std::abs(tau[j][i] * omega[j][i]);
            r.work_per_joint[j] += 0.5 * (prev + p) * (t[i] - t[i - 1]);
            r.power_series[i] += p;
            prev = p;
        }
    }
    for (double w : r.work_per_joint) r.total_work += w;
    r.peak_power = *std::max_element(r.power_series.begin(), r.power_series.end());
    return r;
}

EnergyReport energy_report(const ArmModel& model, const SampledTrajectory& traj)
{
    validate_uniform(traj);
    if (!traj.has_torques()) return energy_report(model, attach_torques(model, traj));
    std::vector<std::vector<double>> tau, omega;
    for (const auto& j : traj.joints) {
        tau.push_back(j.tau);
        omega.push_back(j.omega);
    }
    return energy_report(traj.t, tau, omega);
}

}  // namespace biotraj
