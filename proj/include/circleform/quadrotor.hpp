#pragma once

#include <Eigen/Core>

#include "circleform/rng.hpp"

namespace circleform {

struct QuadrotorParams {
  double mass = 0.964;    // kg
  double Jx = 8.55e-3;    // kg m^2
  double Jy = 8.55e-3;    // kg m^2
  double Jz = 1.47e-2;    // kg m^2
  double gravity = 9.81;  // m/s^2
};

struct ControllerGains {
  Eigen::Vector3d kp{7.76, 6.46, 7.02};      // outer loop, position
  Eigen::Vector3d kd{4.56, 4.16, 5.16};      // outer loop, velocity
  Eigen::Vector3d kp_att{4.33, 3.45, 4.02};  // inner loop, attitude
  Eigen::Vector3d kd_att{1.59, 1.16, 2.37};  // inner loop, body rates
};

struct QuadState {
  Eigen::Vector3d position{0.0, 0.0, 0.0};  // world frame, m
  Eigen::Vector3d velocity{0.0, 0.0, 0.0};  // world frame, m/s
  Eigen::Vector3d attitude{0.0, 0.0, 0.0};  // roll, pitch, yaw, rad
  Eigen::Vector3d rates{0.0, 0.0, 0.0};     // body rates p, q, r, rad/s
};

struct ControlInput {
  double thrust = 0.0;  // total thrust along body z, N
  Eigen::Vector3d torque{0.0, 0.0, 0.0};  // body torques, N m
};

// How per-agent parameter heterogeneity is drawn: one common factor scaling
// mass and inertias together, or independent factors per quantity.
enum class HeterogeneityMode { Correlated, Independent };

struct QuadrotorConfig {
  QuadrotorParams params;
  ControllerGains gains;
  HeterogeneityMode heterogeneity = HeterogeneityMode::Correlated;
  bool heterogeneous = false;  // sample per-agent params in Monte Carlo runs
  double dt_dyn = 0.002;       // inner integration step, s
  double settle_time = 3.0;    // extra simulated time past the last arrival, s
  double hover_altitude = 1.0; // desired z for every agent, m
};

// Body-to-world rotation, ZYX convention.
Eigen::Matrix3d rotation_matrix(const Eigen::Vector3d& attitude);

// Cascaded PD step: the outer loop turns position/velocity error into a
// commanded acceleration, which maps to commanded roll/pitch through the
// small-angle model x'' = g*(theta cos psi + phi sin psi),
// y'' = g*(theta sin psi - phi cos psi); the inner loop regulates attitude
// toward the command with zero commanded body rates.
ControlInput control_step(const QuadState& state, const Eigen::Vector3d& desired_position,
                          const Eigen::Vector3d& desired_velocity, double desired_yaw,
                          const ControllerGains& gains, const QuadrotorParams& params);

// One fixed-step RK4 update of the small-angle rigid-body model with the
// inputs held constant over the step.
QuadState integrate(const QuadState& state, const ControlInput& input,
                    const QuadrotorParams& params, double dt);

// Uniform +-20% heterogeneity about nominal. Correlated mode scales mass and
// inertias by one factor; Independent mode draws one factor per quantity.
QuadrotorParams sample_heterogeneity(const QuadrotorParams& nominal, HeterogeneityMode mode,
                                     RngStream& rng);

inline bool state_unstable(const QuadState& s) {
  const double limit = 1e6;
  return !(s.position.allFinite() && s.velocity.allFinite() && s.attitude.allFinite() &&
           s.rates.allFinite()) ||
         s.position.cwiseAbs().maxCoeff() > limit || s.velocity.cwiseAbs().maxCoeff() > limit ||
         s.attitude.cwiseAbs().maxCoeff() > limit || s.rates.cwiseAbs().maxCoeff() > limit;
}

}  // namespace circleform
