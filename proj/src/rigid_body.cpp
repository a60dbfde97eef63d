#include "maglev/rigid_body.hpp"

#include <stdexcept>

#include "maglev/so3.hpp"

namespace maglev {

namespace {

// Euler's equations I w_dot = -w x (I w) + tau with tau_z = 0.
Vec3 angular_acceleration(const Vec3& w, const Vec2& tau, const Vec3& I) {
  return {(I.y() - I.z()) / I.x() * w.y() * w.z() + tau.x() / I.x(),
          (I.z() - I.x()) / I.y() * w.x() * w.z() + tau.y() / I.y(),
          (I.x() - I.y()) / I.z() * w.x() * w.y()};
}

}  // namespace

StateDerivative dynamics_derivative(const RigidBodyState& state, const Vec2& torque_body_xy,
                                    const Vec3& force_world, const LevitatorParams& params,
                                    double gravity) {
  StateDerivative d;
  d.p_dot = state.v;
  d.v_dot = force_world / params.mass - gravity * Vec3::UnitZ();
  d.R_dot = state.R * so3::skew(state.omega_body);
  d.omega_dot = angular_acceleration(state.omega_body, torque_body_xy, params.inertia);
  return d;
}

RigidBodyState step(const RigidBodyState& state, const Vec2& torque_body_xy,
                    const Vec3& force_world, const LevitatorParams& params, double dt,
                    double gravity) {
  if (!(dt > 0.0 && dt <= 1e-2)) {
    throw std::invalid_argument("rigid body step: dt must lie in (0, 1e-2] s");
  }
  const Vec3 accel = force_world / params.mass - gravity * Vec3::UnitZ();
  const Vec3& I = params.inertia;

  const Vec3 v1 = state.v;
  const Vec3 w1 = state.omega_body;
  const Vec3 dw1 = angular_acceleration(w1, torque_body_xy, I);

  const Vec3 v2 = state.v + 0.5 * dt * accel;
  const Vec3 w2 = w1 + 0.5 * dt * dw1;
  const Vec3 dw2 = angular_acceleration(w2, torque_body_xy, I);

  const Vec3 v3 = state.v + 0.5 * dt * accel;
  const Vec3 w3 = w1 + 0.5 * dt * dw2;
  const Vec3 dw3 = angular_acceleration(w3, torque_body_xy, I);

  const Vec3 v4 = state.v + dt * accel;
  const Vec3 w4 = w1 + dt * dw3;
  const Vec3 dw4 = angular_acceleration(w4, torque_body_xy, I);

  RigidBodyState next;
  next.p = state.p + dt / 6.0 * (v1 + 2.0 * v2 + 2.0 * v3 + v4);
  next.v = state.v + dt * accel;
  next.omega_body = w1 + dt / 6.0 * (dw1 + 2.0 * dw2 + 2.0 * dw3 + dw4);

  const Vec3 w_avg = (w1 + 2.0 * w2 + 2.0 * w3 + w4) / 6.0;
  next.R = state.R * so3::exp(w_avg * dt);
  if (so3::orthonormality_error(next.R) > 1e-9) next.R = so3::project_to_rotation(next.R);
  return next;
}

double kinetic_energy(const RigidBodyState& state, const LevitatorParams& params) {
  const Vec3& w = state.omega_body;
  return 0.5 * params.mass * state.v.squaredNorm() +
         0.5 * (params.inertia.array() * w.array().square()).sum();
}

}  // namespace maglev
