#ifndef MAGLEV_RIGID_BODY_HPP_
#define MAGLEV_RIGID_BODY_HPP_

#include "maglev/magnetics.hpp"

namespace maglev {

struct RigidBodyState {
  Vec3 p = Vec3::Zero();           // m, world
  Vec3 v = Vec3::Zero();           // m/s, world
  Mat3 R = Mat3::Identity();       // body -> world
  Vec3 omega_body = Vec3::Zero();  // rad/s, body
};

struct StateDerivative {
  Vec3 p_dot = Vec3::Zero();
  Vec3 v_dot = Vec3::Zero();
  Mat3 R_dot = Mat3::Zero();
  Vec3 omega_dot = Vec3::Zero();
};

/// Drag-free levitator dynamics with diagonal inertia. force_world is the
/// non-gravitational force; gravity -g e_z is added here. There is no torque
/// input about body z.
StateDerivative dynamics_derivative(const RigidBodyState& state, const Vec2& torque_body_xy,
                                    const Vec3& force_world, const LevitatorParams& params,
                                    double gravity = kStandardGravity);

/// One fixed step with the wrench held constant. (p, v, omega) advance by
/// classical RK4; R <- R exp([w_avg dt]x) with w_avg the RK4-weighted mean
/// of the stage body rates. R is projected back onto SO(3) only when its
/// orthonormality error exceeds 1e-9.
///
/// Throws std::invalid_argument unless dt is in (0, 1e-2].
RigidBodyState step(const RigidBodyState& state, const Vec2& torque_body_xy,
                    const Vec3& force_world, const LevitatorParams& params, double dt,
                    double gravity = kStandardGravity);

/// Translational plus rotational kinetic energy, J.
double kinetic_energy(const RigidBodyState& state, const LevitatorParams& params);

}  // namespace maglev

#endif  // MAGLEV_RIGID_BODY_HPP_
