#ifndef MAGLEV_ATTITUDE_CONTROL_HPP_
#define MAGLEV_ATTITUDE_CONTROL_HPP_

#include "maglev/magnetics.hpp"

namespace maglev {

/// World-frame direction of the body z axis; blind to rotations about it.
struct ReducedAttitude {
  Vec3 gamma = Vec3::UnitZ();

  /// Angle to another reduced attitude, rad, in [0, pi].
  double angle_to(const Vec3& other) const;
};

/// Gains of the reduced-attitude law. Kd, kp and ki act on per-inertia
/// (angular acceleration) units; the torque is scaled by (Ixx, Iyy).
struct AttitudeGains {
  Mat2 Kd = Vec2(108.0, 108.0).asDiagonal();
  double kp = 472.5;
  double ki = 100.0;
  // Bound on |ki * integral * I| per axis, N·m; non-positive disables it.
  // Default is default_attitude_integral_limit() of the reference levitator.
  double integral_torque_limit = 5.0 * 0.0324 * kStandardGravity * 5e-3;

  /// Throws ConfigError unless Kd is symmetric positive definite, kp > 0, ki >= 0.
  void validate() const;
};

/// Anti-windup bound: five times the torque of the levitator's weight acting
/// over the nominal 5 mm displacement.
double default_attitude_integral_limit(const LevitatorParams& params,
                                       double gravity = kStandardGravity);

ReducedAttitude reduced_attitude(const Mat3& R);

/// E R^T (Gamma x Gamma_des): zero at Gamma = Gamma_des and at the antipode.
Vec2 attitude_error(const Mat3& R, const Vec3& gamma_des);

struct AttitudeCommand {
  Vec2 torque_xy = Vec2::Zero();  // N·m, body frame
  Vec2 integral = Vec2::Zero();   // rad·s
};

/// tau_xy = (-Kd w_xy + kp e + ki * integral) (.) (Ixx, Iyy), where the
/// integral is first advanced by e * dt and then clamped by the anti-windup
/// limit. With ki = 0 this is the plain proportional-derivative law.
AttitudeCommand attitude_control(const Mat3& R, const Vec2& omega_xy, const Vec3& gamma_des,
                                 const AttitudeGains& gains, const Vec2& integral, double dt,
                                 const Vec3& inertia);

}  // namespace maglev

#endif  // MAGLEV_ATTITUDE_CONTROL_HPP_
