#include "maglev/attitude_control.hpp"

#include <algorithm>
#include <cmath>

#include "maglev/so3.hpp"

namespace maglev {

namespace {
constexpr double kNominalDisplacement = 5e-3;  // m
}

double ReducedAttitude::angle_to(const Vec3& other) const {
  return std::atan2(gamma.cross(other).norm(), gamma.dot(other));
}

void AttitudeGains::validate() const {
  if (!Kd.isApprox(Kd.transpose(), 1e-12) ||
      Eigen::SelfAdjointEigenSolver<Mat2>(Kd).eigenvalues().minCoeff() <= 0.0) {
    throw ConfigError("attitude Kd must be symmetric positive definite");
  }
  if (!(kp > 0.0)) throw ConfigError("attitude kp must be positive");
  if (!(ki >= 0.0)) throw ConfigError("attitude ki must be non-negative");
}

double default_attitude_integral_limit(const LevitatorParams& params, double gravity) {
  return 5.0 * params.mass * gravity * kNominalDisplacement;
}

ReducedAttitude reduced_attitude(const Mat3& R) {
  so3::require_rotation(R);
  return {R.col(2)};
}

Vec2 attitude_error(const Mat3& R, const Vec3& gamma_des) {
  const Vec3 gamma = R.col(2);
  return (R.transpose() * gamma.cross(gamma_des)).head<2>();
}

AttitudeCommand attitude_control(const Mat3& R, const Vec2& omega_xy, const Vec3& gamma_des,
                                 const AttitudeGains& gains, const Vec2& integral, double dt,
                                 const Vec3& inertia) {
  const Vec2 error = attitude_error(R, gamma_des);
  const Vec2 I_xy = inertia.head<2>();

  AttitudeCommand out;
  out.integral = integral + error * dt;
  if (gains.ki > 0.0 && gains.integral_torque_limit > 0.0) {
    for (int k = 0; k < 2; ++k) {
      const double bound = gains.integral_torque_limit / (gains.ki * I_xy(k));
      out.integral(k) = std::clamp(out.integral(k), -bound, bound);
    }
  }
  const Vec2 accel = -gains.Kd * omega_xy + gains.kp * error + gains.ki * out.integral;
  out.torque_xy = accel.cwiseProduct(I_xy);
  return out;
}

}  // namespace maglev
