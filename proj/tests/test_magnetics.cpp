#include <gtest/gtest.h>

#include <random>

#include "maglev/magnetics.hpp"
#include "test_support.hpp"

namespace maglev {
namespace {

using so3::skew;

TEST(DipoleStrength, ReferenceMagnet) {
  const double volume = 2.0 * std::numbers::pi * 0.0025 * 0.0025 * 0.01;
  EXPECT_NEAR(volume, 3.927e-7, 1e-10);
  EXPECT_NEAR(dipole_strength(1.45, volume), 0.4531, 1e-4);
  EXPECT_EQ(dipole_strength(0.0, volume), 0.0);
  EXPECT_DOUBLE_EQ(dipole_strength(1.45, 2 * volume), 2 * dipole_strength(1.45, volume));
  EXPECT_DOUBLE_EQ(kReferenceDipoleStrength, dipole_strength(1.45, volume));
}

TEST(LevitatorParams, Defaults) {
  const LevitatorParams p = reference_levitator();
  EXPECT_EQ(p.mass, 0.0324);
  EXPECT_EQ(p.dipole_body, Vec3(0, 0, -kReferenceDipoleStrength));
  EXPECT_EQ(p.current_limit, 4.0);
  EXPECT_NO_THROW(p.validate());
  LevitatorParams bad = p;
  bad.inertia.y() = 0.0;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(TorqueMap, HandEvaluatedCrossProduct) {
  const Vec3 m(0, 0, -0.4531);
  const Vec3 tau = torque_map(Mat3::Identity(), m) * Vec3(0.01, 0, 0);
  EXPECT_NEAR(tau.x(), 0.0, 1e-18);
  EXPECT_NEAR(tau.y(), -4.531e-3, 1e-15);
  EXPECT_NEAR(tau.z(), 0.0, 1e-18);
}

TEST(TorqueMap, MatchesDirectCrossProductExactly) {
  std::mt19937_64 rng(10);
  const Vec3 m(0, 0, -kReferenceDipoleStrength);
  for (int k = 0; k < 100; ++k) {
    const Mat3 R = testing::random_rotation(rng);
    const Vec3 b = 0.02 * testing::random_unit(rng);
    const Vec3 tau = torque_map(R, m) * b;
    const Vec3 direct = m.cross(R.transpose() * b);
    EXPECT_LT((tau - direct).norm(), 1e-15 * direct.norm() + 1e-20);
    EXPECT_EQ(tau.z(), 0.0);
    // Field parallel to the world-frame moment exerts no torque.
    EXPECT_LT((torque_map(R, m) * (R * m)).norm(), 1e-15);
  }
}

TEST(TorqueMap, RejectsNonRotation) {
  Mat3 R = Mat3::Identity();
  R(0, 0) = 1.0 + 1e-6;
  EXPECT_THROW(torque_map(R, Vec3(0, 0, -1)), InvalidRotationError);
  EXPECT_THROW(torque_map(-Mat3::Identity(), Vec3(0, 0, -1)), InvalidRotationError);
}

TEST(ForceMap, VerticalGradient) {
  Gradient5 g;
  g.g << -0.5, 0, 0, -0.5, 0;
  const Vec3 f = force_map(Vec3(0, 0, 1)) * g.g;
  EXPECT_NEAR((f - Vec3(0, 0, 1)).norm(), 0.0, 1e-15);
  EXPECT_EQ(force_map(Vec3(1, 2, 3)) * Vec5::Zero(), Vec3::Zero());
}

TEST(ForceMap, MatchesJacobianProduct) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const Vec3 m = testing::random_unit(rng) * 0.5;
    Gradient5 g;
    g.g = Vec5::Random();
    // (m . grad) b for a curl-free field equals J^T m = J m.
    const Vec3 expected = g.jacobian() * m;
    EXPECT_LT((force_map(m) * g.g - expected).norm(), 1e-15);
  }
}

TEST(ForceMap, EnergyGradientOracle) {
  const FieldModel model = default_field_model();
  const LevitatorParams lev = reference_levitator();
  std::mt19937_64 rng(12);
  for (int k = 0; k < 100; ++k) {
    const Mat3 R = testing::random_rotation(rng);
    const Vec3 p = testing::random_in_box(rng, 0.03);
    const Vec8 i = testing::random_currents(rng);
    const Vec3 m_world = R * lev.dipole_body;
    const Vec3 f = force_map(m_world) * model.gradient(p, i).g;
    const Vec3 f_fd = testing::central_difference_gradient(
        [&](const Vec3& x) { return m_world.dot(model.field(x, i)); }, p, 1e-6);
    EXPECT_LT((f - f_fd).norm(), 1e-6 * f.norm());
  }
}

TEST(AllocationMatrix, StructureAndComposition) {
  const FieldModel model = default_field_model();
  const Vec3 m(0, 0, -kReferenceDipoleStrength);
  std::mt19937_64 rng(13);
  for (int k = 0; k < 20; ++k) {
    const Mat3 R = testing::random_rotation(rng);
    const Vec3 p = testing::random_in_box(rng, 0.02);
    const Mat6x8 N = allocation_matrix(model, R, p, m);
    EXPECT_EQ(N * Vec8::Zero(), Vec6::Zero());
    EXPECT_EQ(N.row(2).cwiseAbs().maxCoeff(), 0.0);
    for (int j = 0; j < kNumCoils; ++j) {
      const Vec3 b = dipole_field(model.coil(j), p, 1.0);
      const Vec5 g = dipole_gradient(model.coil(j), p, 1.0).g;
      Vec6 expected;
      expected << m.cross(R.transpose() * b), force_map(R * m) * g;
      EXPECT_LT((N.col(j) - expected).norm(), 1e-14 * expected.norm());
    }
    const Mat5x8 Nr = reduced_allocation_matrix(model, R, p, m);
    Mat5x8 deleted;
    deleted << N.topRows<2>(), N.bottomRows<3>();
    EXPECT_LT((Nr - deleted).norm(), 1e-15 * N.norm());
  }
}

TEST(ReducedInteraction, TorqueBlockAtIdentity) {
  const double mb = kReferenceDipoleStrength;
  const auto M = reduced_interaction_matrix(Mat3::Identity(), Vec3(0, 0, -mb));
  Eigen::Matrix<double, 2, 3> expected;
  expected << 0, mb, 0, -mb, 0, 0;
  const Eigen::Matrix<double, 2, 3> torque_field = M.block<2, 3>(0, 0);
  const Eigen::Matrix<double, 2, 5> torque_gradient = M.block<2, 5>(0, 3);
  const Mat3 force_field = M.block<3, 3>(2, 0);
  const Mat3x5 force_gradient = M.block<3, 5>(2, 3);
  EXPECT_EQ(torque_field, expected);
  EXPECT_TRUE(torque_gradient.isZero(0.0));
  EXPECT_TRUE(force_field.isZero(0.0));
  EXPECT_EQ(force_gradient, force_map(Vec3(0, 0, -mb)));
}

TEST(ReducedInteraction, LinearInDipoleStrength) {
  std::mt19937_64 rng(14);
  const Mat3 R = testing::random_rotation(rng);
  const auto M1 = reduced_interaction_matrix(R, Vec3(0, 0, -0.3));
  const auto M2 = reduced_interaction_matrix(R, Vec3(0, 0, -0.3 * 2.5));
  EXPECT_LT((M2 - 2.5 * M1).norm(), 1e-15);
}

TEST(ReducedInteraction, RejectsOffAxisDipole) {
  EXPECT_THROW(reduced_interaction_matrix(Mat3::Identity(), Vec3(0.1, 0, -0.4)),
               std::invalid_argument);
  EXPECT_NO_THROW(reduced_interaction_matrix(Mat3::Identity(), Vec3(0, 0, 0.4)));
}

TEST(MagneticWrench, TorqueAboutDipoleAxisVanishes) {
  const FieldModel model = default_field_model();
  const Vec3 m(0, 0, -kReferenceDipoleStrength);
  std::mt19937_64 rng(15);
  for (int k = 0; k < 100; ++k) {
    const Mat3 R = testing::random_rotation(rng);
    const Vec8 i = testing::random_currents(rng);
    const Vec6 w = magnetic_wrench(model, R, Vec3(0.003, 0.001, -0.002), m, i);
    EXPECT_EQ(w(2), 0.0);
    const Vec6 w2 = magnetic_wrench(model, R, Vec3(0.003, 0.001, -0.002), m, 2.0 * i);
    EXPECT_LT((w2 - 2.0 * w).norm(), 1e-14 * w.norm());
  }
}

}  // namespace
}  // namespace maglev
