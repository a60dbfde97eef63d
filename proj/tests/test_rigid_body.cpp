#include <gtest/gtest.h>

#include <random>

#include "maglev/rigid_body.hpp"
#include "maglev/so3.hpp"
#include "test_support.hpp"

namespace maglev {
namespace {

LevitatorParams symmetric_top() {
  LevitatorParams p = reference_levitator();
  p.inertia = Vec3(6.0e-6, 6.0e-6, 1.14e-6);
  return p;
}

TEST(Dynamics, FreeFallAtRest) {
  const LevitatorParams params = reference_levitator();
  const StateDerivative d = dynamics_derivative({}, Vec2::Zero(), Vec3::Zero(), params);
  EXPECT_EQ(d.v_dot, Vec3(0, 0, -9.81));
  EXPECT_EQ(d.omega_dot, Vec3::Zero());
  EXPECT_EQ(d.p_dot, Vec3::Zero());
}

TEST(Dynamics, HoverForceCancelsGravity) {
  const LevitatorParams params = reference_levitator();
  const Vec3 f(0, 0, params.mass * 9.81);
  const StateDerivative d = dynamics_derivative({}, Vec2::Zero(), f, params);
  EXPECT_NEAR(d.v_dot.norm(), 0.0, 1e-15);
}

TEST(Dynamics, EulerEquations) {
  const LevitatorParams params = reference_levitator();
  const Vec3 I = params.inertia;
  RigidBodyState s;
  s.omega_body = Vec3(3.0, -2.0, 5.0);
  s.R = so3::rot_y(0.4);
  const Vec2 tau(1e-5, -2e-5);
  const StateDerivative d = dynamics_derivative(s, tau, Vec3::Zero(), params);
  const Vec3 w = s.omega_body;
  // J w_dot = -w x (J w) + tau, written with the full inertia matrix.
  const Mat3 J = I.asDiagonal();
  const Vec3 expected = J.inverse() * (-w.cross(J * w) + Vec3(tau.x(), tau.y(), 0.0));
  EXPECT_LT((d.omega_dot - expected).norm(), 1e-12 * expected.norm());
  EXPECT_DOUBLE_EQ(d.omega_dot.z(), (I.x() - I.y()) / I.z() * w.x() * w.y());
  EXPECT_TRUE(d.R_dot.isApprox(s.R * so3::skew(w)));
}

TEST(Dynamics, SymmetricInertiaHasNoYawAcceleration) {
  const LevitatorParams params = symmetric_top();
  std::mt19937_64 rng(20);
  for (int k = 0; k < 50; ++k) {
    RigidBodyState s;
    s.omega_body = 50.0 * testing::random_unit(rng);
    const Vec2 tau = 1e-4 * Vec2::Random();
    EXPECT_EQ(dynamics_derivative(s, tau, Vec3::Zero(), params).omega_dot.z(), 0.0);
  }
}

TEST(Step, FreeFallIsExact) {
  const LevitatorParams params = reference_levitator();
  RigidBodyState s;
  s.p = Vec3(0.01, 0.0, 0.02);
  for (int k = 0; k < 100; ++k) s = step(s, Vec2::Zero(), Vec3::Zero(), params, 1e-3);
  EXPECT_NEAR(s.p.z() - 0.02, -0.04905, 1e-9);
  EXPECT_NEAR(s.v.z(), -0.981, 1e-12);
  EXPECT_EQ(s.p.x(), 0.01);
}

TEST(Step, SymmetricTopInvariants) {
  const LevitatorParams params = symmetric_top();
  RigidBodyState s;
  s.omega_body = Vec3(4.0, -3.0, 20.0);
  const double norm0 = s.omega_body.norm();
  const double wz0 = s.omega_body.z();
  double worst_norm = 0.0;
  double worst_wz = 0.0;
  for (int k = 0; k < 100000; ++k) {
    s = step(s, Vec2::Zero(), Vec3::Zero(), params, 1e-4, 0.0);
    worst_norm = std::max(worst_norm, std::abs(s.omega_body.norm() - norm0));
    worst_wz = std::max(worst_wz, std::abs(s.omega_body.z() - wz0));
  }
  EXPECT_LT(worst_norm, 1e-9);
  EXPECT_LT(worst_wz, 1e-9);
  EXPECT_LT(so3::orthonormality_error(s.R), 1e-9);
  EXPECT_GT(s.R.determinant(), 0.0);
}

TEST(Step, KineticEnergyConservedWithoutGravity) {
  const LevitatorParams params = reference_levitator();
  RigidBodyState s;
  s.v = Vec3(0.01, -0.02, 0.005);
  s.omega_body = Vec3(10.0, 2.0, -5.0);
  const double e0 = kinetic_energy(s, params);
  for (int k = 0; k < 10000; ++k) s = step(s, Vec2::Zero(), Vec3::Zero(), params, 1e-3, 0.0);
  EXPECT_LT(std::abs(kinetic_energy(s, params) - e0), 1e-8 * e0);
}

TEST(Step, OrthonormalityAfterManySteps) {
  const LevitatorParams params = reference_levitator();
  RigidBodyState s;
  s.omega_body = Vec3(7.0, -11.0, 13.0);
  for (int k = 0; k < 100000; ++k) {
    s = step(s, Vec2(1e-6, -1e-6), Vec3::Zero(), params, 1e-4, 0.0);
  }
  EXPECT_LT(so3::orthonormality_error(s.R), 1e-9);
  EXPECT_GT(s.R.determinant(), 0.0);
  EXPECT_TRUE(s.omega_body.allFinite());
}

TEST(Step, FourthOrderConvergence) {
  const LevitatorParams params = reference_levitator();
  auto run = [&](int n) {
    RigidBodyState s;
    s.omega_body = Vec3(5.0, 3.0, 1.0);
    const double dt = 1.0 / n;
    for (int k = 0; k < n; ++k) s = step(s, Vec2(2e-5, -1e-5), Vec3(0.1, 0, 0.3), params, dt);
    return s;
  };
  const RigidBodyState ref = run(3200);
  const double e1 = (run(200).omega_body - ref.omega_body).norm();
  const double e2 = (run(400).omega_body - ref.omega_body).norm();
  EXPECT_GT(e1 / e2, 12.0);
  EXPECT_LT(e1 / e2, 20.0);
}

TEST(Step, RejectsBadTimeStep) {
  const LevitatorParams params = reference_levitator();
  EXPECT_THROW(step({}, Vec2::Zero(), Vec3::Zero(), params, 0.0), std::invalid_argument);
  EXPECT_THROW(step({}, Vec2::Zero(), Vec3::Zero(), params, 0.02), std::invalid_argument);
}

}  // namespace
}  // namespace maglev
