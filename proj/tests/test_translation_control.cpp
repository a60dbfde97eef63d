#include <gtest/gtest.h>

#include <cmath>

#include "maglev/translation_control.hpp"

namespace maglev {
namespace {

constexpr double kMass = 0.0324;

// Cost matrix of a fixed gain: X = Q + K^T r K + Acl^T X Acl, via Kronecker products.
Mat2 closed_loop_cost(const Mat2& A, const Vec2& B, const Mat2& Q, double r, const RowVec2& K) {
  const Mat2 Acl = A - B * K;
  const Mat2 C = Q + K.transpose() * r * K;
  // Column-major vec: vec(Acl^T X Acl) = kron(Acl^T, Acl^T) vec(X).
  Eigen::Matrix4d L = Eigen::Matrix4d::Identity();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) L.block<2, 2>(2 * i, 2 * j) -= Acl(j, i) * Acl.transpose();
  const Eigen::Vector4d c = Eigen::Map<const Eigen::Vector4d>(C.data());
  Eigen::Vector4d x = L.partialPivLu().solve(c);
  return Eigen::Map<Mat2>(x.data());
}

std::array<Mat2, 3> paper_costs() {
  return {Mat2(Vec2(22.0, 7.0).asDiagonal()), Mat2(Vec2(15.0, 7.0).asDiagonal()),
          Mat2(Vec2(30.0, 10.0).asDiagonal())};
}

TEST(DiscretizeAxis, ZeroOrderHold) {
  const AxisModel m = discretize_axis(kMass, 1e-3);
  EXPECT_EQ(m.A, (Mat2() << 1.0, 1e-3, 0.0, 1.0).finished());
  EXPECT_NEAR(m.B(0), 1.5432e-5, 1e-9);
  EXPECT_NEAR(m.B(1), 0.030864, 1e-6);
  EXPECT_DOUBLE_EQ(m.B(0), 1e-6 / (2 * kMass));
  EXPECT_DOUBLE_EQ(m.B(1), 1e-3 / kMass);
  EXPECT_EQ((m.A * Vec2(0.3, 0.0))(1), 0.0);
}

TEST(DiscretizeAxis, SemigroupProperty) {
  const AxisModel one = discretize_axis(kMass, 1e-3);
  const AxisModel two = discretize_axis(kMass, 2e-3);
  EXPECT_LT((one.A * one.A - two.A).norm(), 1e-15);
  EXPECT_LT((one.A * one.B + one.B - two.B).norm(), 1e-15);
}

TEST(SolveDare, ScalarGoldenRatio) {
  using M1 = Eigen::Matrix<double, 1, 1>;
  const M1 a = M1::Constant(1.0);
  const M1 b = M1::Constant(1.0);
  const M1 q = M1::Constant(1.0);
  const M1 P = solve_dare<1>(a, b, q, 1.0);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  EXPECT_NEAR(P(0, 0), phi, 1e-9);
  EXPECT_NEAR(lqr_gain<1>(a, b, P, 1.0)(0, 0), phi - 1.0, 1e-9);
}

TEST(SolveDare, ZeroCostGivesZeroGain) {
  const AxisModel m = discretize_axis(kMass, 1e-3);
  const LqrDesign d = design_axis_lqr(m, Mat2::Zero(), 0.1, 5e-3);
  EXPECT_EQ(d.P_normalized, Mat2::Zero());
  EXPECT_EQ(d.K, RowVec2::Zero());
}

TEST(SolveDare, RejectsNonPositiveInputCost) {
  const AxisModel m = discretize_axis(kMass, 1e-3);
  EXPECT_THROW(solve_dare<2>(m.A, m.B, Mat2::Identity(), 0.0), DareError);
}

TEST(DesignAxisLqr, PaperDesigns) {
  const AxisModel m = discretize_axis(kMass, 1e-3);
  for (const Mat2& Q : paper_costs()) {
    const LqrDesign d = design_axis_lqr(m, Q, 0.1, 5e-3);
    EXPECT_LT(d.dare_residual, 1e-10);
    EXPECT_LT(d.spectral_radius, 1.0);
    EXPECT_GT(d.K(0), 0.0);
    EXPECT_GT(d.K(1), 0.0);

    const Normalization n = d.normalization;
    EXPECT_EQ(n.Tx, Mat2(Vec2(5e-3, 25e-3).asDiagonal()));
    EXPECT_DOUBLE_EQ(n.Tu, 5 * kMass * 5e-3);

    // Independent check in normalized coordinates: the Riccati solution is
    // the cost of its own gain, and nearby gains cost more.
    const Mat2 A_bar = n.Tx.inverse() * m.A * n.Tx;
    const Vec2 B_bar = n.Tx.inverse() * m.B * n.Tu;
    const RowVec2 K_bar = d.K * n.Tx / n.Tu;
    const Mat2 X = closed_loop_cost(A_bar, B_bar, Q, 0.1, K_bar);
    EXPECT_LT((X - d.P_normalized).norm(), 1e-8 * X.norm());
    for (int k = 0; k < 2; ++k) {
      for (double s : {-1.0, 1.0}) {
        RowVec2 K2 = K_bar;
        K2(k) *= 1.0 + 0.01 * s;
        EXPECT_GT(closed_loop_cost(A_bar, B_bar, Q, 0.1, K2).trace(), X.trace());
      }
    }
  }
}

TEST(DesignAxisLqr, IdentityNormalizationMatchesPlainDesign) {
  const AxisModel m = discretize_axis(kMass, 1e-3);
  const Mat2 Q = Vec2(3.0, 0.5).asDiagonal();
  const LqrDesign d = design_axis_lqr(m, Q, 2.0, Normalization{});
  const Mat2 P = solve_dare<2>(m.A, m.B, Q, 2.0);
  EXPECT_LT((d.K - lqr_gain<2>(m.A, m.B, P, 2.0)).norm(), 1e-12 * d.K.norm());
}

TEST(DesignAxisLqr, InputScalingLeavesClosedLoopUnchanged) {
  const AxisModel m = discretize_axis(kMass, 1e-3);
  const Mat2 Q = Vec2(30.0, 10.0).asDiagonal();
  Normalization n = nominal_normalization(kMass, 5e-3);
  const LqrDesign a = design_axis_lqr(m, Q, 0.1, n);
  n.Tu *= 3.0;
  const LqrDesign b = design_axis_lqr(m, Q, 0.1 * 9.0, n);
  // The physical input weight is rho / Tu^2, so rho is scaled by alpha^2 to match.
  EXPECT_NEAR(std::abs(a.closed_loop_eigenvalues[0] * a.closed_loop_eigenvalues[1] -
                       b.closed_loop_eigenvalues[0] * b.closed_loop_eigenvalues[1]),
              0.0, 1e-9);
  EXPECT_LT((a.K - b.K).norm(), 1e-8 * a.K.norm());
}

TEST(DesignAxisLqr, RejectsInvalidInputs) {
  const AxisModel m = discretize_axis(kMass, 1e-3);
  EXPECT_THROW(design_axis_lqr(m, Mat2::Identity(), 0.0, 5e-3), std::invalid_argument);
  EXPECT_THROW(design_axis_lqr(m, -Mat2::Identity(), 0.1, 5e-3), std::invalid_argument);
  EXPECT_THROW(design_axis_lqr(m, Mat2::Identity(), 0.1, 0.0), std::invalid_argument);
}

TranslationGains paper_gains() {
  TranslationGains g;
  const AxisModel m = discretize_axis(kMass, 1e-3);
  const auto Q = paper_costs();
  for (int k = 0; k < 3; ++k) g.axes[static_cast<std::size_t>(k)] = design_axis_lqr(m, Q[static_cast<std::size_t>(k)], 0.1, 5e-3);
  return g;
}

TEST(TranslationControl, GravityFeedforwardAtSetpoint) {
  const TranslationGains g = paper_gains();
  const Vec3 p(0.001, -0.002, 0.003);
  const TranslationCommand c =
      translation_control(p, Vec3::Zero(), p, Vec3::Zero(), g, Vec3::Zero(), 1e-3);
  EXPECT_NEAR(c.force.x(), 0.0, 1e-15);
  EXPECT_NEAR(c.force.y(), 0.0, 1e-15);
  EXPECT_NEAR(c.force.z(), 0.31784, 1e-5);
  EXPECT_EQ(c.integral, Vec3::Zero());
}

TEST(TranslationControl, ProportionalAndSign) {
  TranslationGains g = paper_gains();
  g.ki.setZero();
  const double e = 1e-3;
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 p_des = Vec3::Zero();
    p_des(axis) = e;
    const TranslationCommand c =
        translation_control(Vec3::Zero(), Vec3::Zero(), p_des, Vec3::Zero(), g, Vec3::Zero(), 1e-3);
    const Vec3 f = c.force - Vec3(0, 0, kMass * kStandardGravity);
    EXPECT_NEAR(f(axis), g.axes[static_cast<std::size_t>(axis)].K(0) * e, 1e-15);
    EXPECT_GT(f(axis), 0.0);
  }
}

TEST(TranslationControl, IntegralAccumulates) {
  const TranslationGains g = paper_gains();
  const double e = 2e-4;
  const double dt = 1e-3;
  Vec3 integral = Vec3::Zero();
  TranslationCommand c;
  for (int k = 0; k < 500; ++k) {
    c = translation_control(Vec3::Zero(), Vec3::Zero(), Vec3(e, 0, 0), Vec3::Zero(), g, integral, dt);
    integral = c.integral;
  }
  EXPECT_NEAR(10.0 * c.integral.x(), 10.0 * e * 0.5, 1e-12);
  EXPECT_NEAR(c.force.x(), g.axes[0].K(0) * e + 10.0 * e * 0.5, 1e-12);
}

TEST(TranslationControl, AntiWindupClamp) {
  const TranslationGains g = paper_gains();
  const TranslationCommand c = translation_control(
      Vec3::Zero(), Vec3::Zero(), Vec3(1.0, -1.0, 1.0), Vec3::Zero(), g, Vec3::Zero(), 10.0);
  const double bound = 0.5 * kMass * kStandardGravity;
  EXPECT_NEAR(10.0 * c.integral.x(), bound, 1e-15);
  EXPECT_NEAR(10.0 * c.integral.y(), -bound, 1e-15);
  EXPECT_NEAR(10.0 * c.integral.z(), bound, 1e-15);
}

}  // namespace
}  // namespace maglev
