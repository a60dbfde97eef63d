#include <gtest/gtest.h>

#include "maglev/sim/closed_loop.hpp"
#include "maglev/so3.hpp"

namespace maglev::sim {
namespace {

SimConfig quiet_hover(double duration) {
  SimConfig c;
  c.duration = duration;
  c.pos_noise_std = 0.0;
  c.att_noise_std = 0.0;
  c.loop_delay = 0.0;
  return c;
}

TEST(ClosedLoop, HoverWithoutNoiseOrDelayConverges) {
  SimConfig c = quiet_hover(4.0);
  c.initial_state.p = Vec3(0.002, -0.001, 0.002);
  const SimLog log = run_closed_loop(c);
  ASSERT_FALSE(log.diverged) << log.divergence_reason;
  ASSERT_EQ(log.rows.size(), 4000u);
  Vec3 mean_error = Vec3::Zero();
  int n = 0;
  for (const auto& row : log.rows) {
    if (row.t < 3.0) continue;
    mean_error += row.truth.p - row.setpoint.p_des;
    ++n;
  }
  mean_error /= n;
  EXPECT_LT(mean_error.norm(), 1e-4);
  EXPECT_EQ(log.allocation_failures, 0);
}

TEST(ClosedLoop, ZeroGravityEquilibriumStaysPut) {
  SimConfig c = quiet_hover(1.0);
  c.gravity = 0.0;
  const SimLog log = run_closed_loop(c);
  ASSERT_FALSE(log.diverged);
  for (const auto& row : log.rows) {
    EXPECT_LT(row.i_cmd.norm(), 1e-12);
    EXPECT_LT(row.truth.p.norm(), 1e-15);
    EXPECT_LT(so3::log(row.truth.R).norm(), 1e-15);
  }
}

TEST(ClosedLoop, SameSeedIsBitIdentical) {
  SimConfig c;
  c.duration = 0.5;
  c.initial_state.p = Vec3(0.0, 0.0, 0.005);
  const SimLog a = run_closed_loop(c);
  const SimLog b = run_closed_loop(c);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    ASSERT_EQ(a.rows[k].truth.p, b.rows[k].truth.p);
    ASSERT_EQ(a.rows[k].truth.R, b.rows[k].truth.R);
    ASSERT_EQ(a.rows[k].i_cmd, b.rows[k].i_cmd);
    ASSERT_EQ(a.rows[k].p_est, b.rows[k].p_est);
  }
  c.seed = 2;
  const SimLog d = run_closed_loop(c);
  EXPECT_NE(a.rows.back().p_est, d.rows.back().p_est);
}

TEST(ClosedLoop, AllocationConsistentWhenUnsaturated) {
  SimConfig c;
  c.duration = 2.0;
  c.trajectory.kind = TrajectoryKind::kFigureEight;
  const SimLog log = run_closed_loop(c);
  ASSERT_FALSE(log.diverged);
  for (const auto& row : log.rows) {
    if (row.sat_mask != 0 || row.allocation_failed) continue;
    EXPECT_LE(row.allocation_residual, 1e-9);
  }
}

TEST(ClosedLoop, ZeroOrderHoldDrivesFirstOrderLag) {
  SimConfig c;
  c.duration = 0.3;
  c.initial_state.p = Vec3(0.003, 0.0, 0.0);
  const SimLog log = run_closed_loop(c);
  const double decay = std::exp(-2.0 * std::numbers::pi * c.corner_frequency * c.controller_period);
  for (std::size_t k = 0; k + 1 < log.rows.size(); ++k) {
    const auto& r = log.rows[k];
    const Vec8 predicted = r.i_cmd + (r.i_actual - r.i_cmd) * decay;
    EXPECT_LT((log.rows[k + 1].i_actual - predicted).norm(), 1e-12);
  }
}

TEST(ClosedLoop, NoFeedbackDiverges) {
  SimConfig c = quiet_hover(5.0);
  for (auto& Q : c.gains.Q) Q.setZero();
  c.gains.integrators = false;
  // Allocation at the measured pose cancels gravity wherever the body is, so
  // without position feedback an initial drift is simply never arrested.
  c.initial_state.v = Vec3(0.05, 0.0, 0.0);
  const SimLog log = run_closed_loop(c);
  EXPECT_TRUE(log.diverged);
  EXPECT_FALSE(log.divergence_reason.empty());
  EXPECT_TRUE(summarize(log).diverged);
}

TEST(ClosedLoop, SymmetricInertiaKeepsYawRate) {
  SimConfig c = quiet_hover(3.0);
  c.levitator.inertia = Vec3(6e-6, 6e-6, 1.14e-6);
  c.initial_state.p = Vec3(0.002, 0.001, -0.001);
  c.initial_state.omega_body = Vec3(0.0, 0.0, 0.3);
  const SimLog log = run_closed_loop(c);
  ASSERT_FALSE(log.diverged);
  double worst = 0.0;
  for (const auto& row : log.rows) worst = std::max(worst, std::abs(row.truth.omega_body.z() - 0.3));
  EXPECT_LT(worst, 1e-6);
}

TEST(ClosedLoop, SummaryStatistics) {
  SimConfig c = quiet_hover(1.0);
  c.initial_state.p = Vec3(0.0, 0.0, 0.001);
  const SimLog log = run_closed_loop(c);
  const SimSummary s = summarize(log);
  EXPECT_EQ(s.ticks, 1000);
  EXPECT_GT(s.position_rms.z(), 0.0);
  EXPECT_LT(s.position_rms.z(), 1e-3);
  EXPECT_GT(s.max_abs_current, 0.0);
  EXPECT_LE(s.max_abs_current, 4.0);
  EXPECT_GE(s.saturation_fraction, 0.0);
}

TEST(SimConfig, Validation) {
  SimConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.ticks(), 10000);
  EXPECT_EQ(c.substeps(), 10);
  EXPECT_EQ(c.delay_ticks(), 4);
  c.physics_step = 3e-4;
  EXPECT_THROW(c.validate(), ConfigError);
  c = SimConfig{};
  c.loop_delay = 4.5e-3;
  EXPECT_THROW(c.validate(), ConfigError);
  c = SimConfig{};
  c.corner_frequency = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
}

}  // namespace
}  // namespace maglev::sim
