#include "circleform/quadrotor.hpp"

#include <cmath>

namespace circleform {

Eigen::Matrix3d rotation_matrix(const Eigen::Vector3d& attitude) {
  const double cph = std::cos(attitude.x()), sph = std::sin(attitude.x());
  const double cth = std::cos(attitude.y()), sth = std::sin(attitude.y());
  const double cps = std::cos(attitude.z()), sps = std::sin(attitude.z());
  Eigen::Matrix3d r;
  r << cth * cps, sph * sth * cps - cph * sps, cph * sth * cps + sph * sps,
       cth * sps, sph * sth * sps + cph * cps, cph * sth * sps - sph * cps,
       -sth,      sph * cth,                   cph * cth;
  return r;
}

ControlInput control_step(const QuadState& state, const Eigen::Vector3d& desired_position,
                          const Eigen::Vector3d& desired_velocity, double desired_yaw,
                          const ControllerGains& gains, const QuadrotorParams& params) {
  const Eigen::Vector3d acc =
      gains.kd.cwiseProduct(desired_velocity - state.velocity) +
      gains.kp.cwiseProduct(desired_position - state.position);

  const double cps = std::cos(desired_yaw), sps = std::sin(desired_yaw);
  const double g = params.gravity;
  Eigen::Vector3d att_cmd;
  att_cmd.x() = (sps * acc.x() - cps * acc.y()) / g;  // roll
  att_cmd.y() = (cps * acc.x() + sps * acc.y()) / g;  // pitch
  att_cmd.z() = desired_yaw;

  ControlInput u;
  u.thrust = params.mass * (g + acc.z());
  u.torque = gains.kd_att.cwiseProduct(-state.rates) +
             gains.kp_att.cwiseProduct(att_cmd - state.attitude);
  return u;
}

namespace {

struct Derivative {
  Eigen::Vector3d dpos, dvel, datt, drates;
};

Derivative dynamics(const QuadState& s, const ControlInput& u, const QuadrotorParams& p) {
  const double cph = std::cos(s.attitude.x()), sph = std::sin(s.attitude.x());
  const double cth = std::cos(s.attitude.y()), sth = std::sin(s.attitude.y());
  const double cps = std::cos(s.attitude.z()), sps = std::sin(s.attitude.z());
  const double a = u.thrust / p.mass;
  Derivative d;
  d.dpos = s.velocity;
  // Third column of the body-to-world rotation times the specific thrust.
  d.dvel = Eigen::Vector3d(a * (cph * sth * cps + sph * sps),
                           a * (cph * sth * sps - sph * cps),
                           a * (cph * cth) - p.gravity);
  d.datt = s.rates;  // small-angle kinematics
  d.drates = Eigen::Vector3d(u.torque.x() / p.Jx, u.torque.y() / p.Jy, u.torque.z() / p.Jz);
  return d;
}

QuadState advance(const QuadState& s, const Derivative& d, double h) {
  QuadState n;
  n.position = s.position + h * d.dpos;
  n.velocity = s.velocity + h * d.dvel;
  n.attitude = s.attitude + h * d.datt;
  n.rates = s.rates + h * d.drates;
  return n;
}

}  // namespace

QuadState integrate(const QuadState& state, const ControlInput& input,
                    const QuadrotorParams& params, double dt) {
  const Derivative k1 = dynamics(state, input, params);
  const Derivative k2 = dynamics(advance(state, k1, dt / 2.0), input, params);
  const Derivative k3 = dynamics(advance(state, k2, dt / 2.0), input, params);
  const Derivative k4 = dynamics(advance(state, k3, dt), input, params);

  QuadState out;
  out.position =
      state.position + dt / 6.0 * (k1.dpos + 2.0 * k2.dpos + 2.0 * k3.dpos + k4.dpos);
  out.velocity =
      state.velocity + dt / 6.0 * (k1.dvel + 2.0 * k2.dvel + 2.0 * k3.dvel + k4.dvel);
  out.attitude =
      state.attitude + dt / 6.0 * (k1.datt + 2.0 * k2.datt + 2.0 * k3.datt + k4.datt);
  out.rates =
      state.rates + dt / 6.0 * (k1.drates + 2.0 * k2.drates + 2.0 * k3.drates + k4.drates);
  return out;
}

QuadrotorParams sample_heterogeneity(const QuadrotorParams& nominal, HeterogeneityMode mode,
                                     RngStream& rng) {
  QuadrotorParams p = nominal;
  if (mode == HeterogeneityMode::Correlated) {
    const double k = rng.uniform(0.8, 1.2);
    p.mass = k * nominal.mass;
    p.Jx = k * nominal.Jx;
    p.Jy = k * nominal.Jy;
    p.Jz = k * nominal.Jz;
  } else {
    p.mass = rng.uniform(0.8, 1.2) * nominal.mass;
    p.Jx = rng.uniform(0.8, 1.2) * nominal.Jx;
    p.Jy = rng.uniform(0.8, 1.2) * nominal.Jy;
    p.Jz = rng.uniform(0.8, 1.2) * nominal.Jz;
  }
  return p;
}

}  // namespace circleform
