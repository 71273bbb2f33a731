#pragma once

#include <vector>

#include "biotraj/trajectory.hpp"

namespace biotraj {

/**
 * Two-link planar arm in a vertical plane.
 *
 * Each link is a uniform rod (centre of mass at mid-length, inertia m*l^2/12
 * about it); the payload is a point mass at the tip of link 2. Joint 1 is
 * measured from the hanging-down vertical, joint 2 is the relative elbow
 * flexion.
 */
struct ArmModel {
    double l1 = 0.495;     // upper arm, m
    double l2 = 0.45;      // forearm + hand, m
    double m1 = 3.0;       // kg
    double m2 = 2.5;       // kg
    double m_payload = 4.0;  // kg
    double g = 9.81;       // m/s^2

    /// Throws invalid_argument on non-positive lengths, negative masses or g < 0.
    void validate() const;
};

struct JointState {
    double theta1 = 0.0, theta2 = 0.0;
    double omega1 = 0.0, omega2 = 0.0;
    double alpha1 = 0.0, alpha2 = 0.0;
};

/// M(theta) * alpha + C(theta, omega) + G(theta) = tau
struct DynamicsTerms {
    double M11 = 0.0, M12 = 0.0, M21 = 0.0, M22 = 0.0;
    double C1 = 0.0, C2 = 0.0;
    double G1 = 0.0, G2 = 0.0;
};

struct JointTorques {
    double tau1 = 0.0;
    double tau2 = 0.0;
};

struct JointAccelerations {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
};

struct EnergyReport {
    std::vector<double> work_per_joint;  // J, integral of |tau_j * omega_j|
    double total_work = 0.0;             // J
    double peak_power = 0.0;             // W
    std::vector<double> power_series;    // W, sum_j |tau_j * omega_j|
};

double kinetic_energy(const ArmModel& model, const JointState& state);

/// Zero at the shoulder; decreases as the arm hangs lower.
double potential_energy(const ArmModel& model, double theta1, double theta2);

DynamicsTerms dynamics_terms(const ArmModel& model, double theta1, double theta2,
                             double omega1, double omega2);

JointTorques inverse_dynamics(const ArmModel& model, const JointState& state);

/// Condition number above which forward_dynamics refuses to invert M.
inline constexpr double kMaxMassMatrixCondition = 1e10;

JointAccelerations forward_dynamics(const ArmModel& model, double theta1, double theta2,
                                    double omega1, double omega2, double tau1, double tau2);

/// Fills tau per joint and the summed absolute power for a two-joint trajectory.
SampledTrajectory attach_torques(const ArmModel& model, SampledTrajectory traj);

/// Absolute mechanical work (trapezoidal) and power statistics; computes
/// torques first when the trajectory does not carry them.
EnergyReport energy_report(const ArmModel& model, const SampledTrajectory& traj);

/// Same accounting on explicit torque/velocity series (any joint count).
EnergyReport energy_report(const std::vector<double>& t,
                           const std::vector<std::vector<double>>& tau,
                           const std::vector<std::vector<double>>& omega);

}  // namespace biotraj
