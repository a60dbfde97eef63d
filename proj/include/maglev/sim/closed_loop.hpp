#ifndef MAGLEV_SIM_CLOSED_LOOP_HPP_
#define MAGLEV_SIM_CLOSED_LOOP_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "maglev/attitude_control.hpp"
#include "maglev/field_model.hpp"
#include "maglev/magnetics.hpp"
#include "maglev/rigid_body.hpp"
#include "maglev/sim/trajectory.hpp"
#include "maglev/translation_control.hpp"

namespace maglev::sim {

/// Controller tuning as configured; LQR gains are designed from it at run start.
struct ControllerGains {
  AttitudeGains attitude;
  // Normalized state costs for x, y, z.
  std::array<Mat2, 3> Q = {Mat2(Vec2(22.0, 7.0).asDiagonal()),
                           Mat2(Vec2(15.0, 7.0).asDiagonal()),
                           Mat2(Vec2(30.0, 10.0).asDiagonal())};
  double rho = 0.1;
  double xi = 5e-3;               // m, nominal displacement
  double velocity_factor = 5.0;   // Tx = diag(xi, velocity_factor * xi)
  double input_factor = 5.0;      // Tu = input_factor * m * xi
  Vec3 ki = Vec3::Constant(10.0);
  bool integrators = true;        // false zeroes both integral actions
  // LQR discretization period; 0 means the controller period. Setting it
  // keeps the gains fixed while the controller period varies.
  double design_period = 0.0;
};

struct SimConfig {
  double controller_period = 1e-3;  // s
  double physics_step = 1e-4;       // s
  double duration = 10.0;           // s
  double corner_frequency = 26.4;   // Hz
  double loop_delay = 4e-3;         // s
  double pos_noise_std = 5e-5;      // m
  double att_noise_std = 1e-3;      // rad
  std::uint64_t seed = 1;
  double gravity = kStandardGravity;
  Vec3 disturbance_force = Vec3::Zero();  // N, world frame, added to the plant
  double divergence_position = 0.2;       // m
  double divergence_rate = 500.0;         // rad/s

  TrajectorySpec trajectory;
  ControllerGains gains;
  LevitatorParams levitator = reference_levitator();
  FieldModel field_model = default_field_model();
  RigidBodyState initial_state;
  // Coil currents at t = 0; defaults to the hover solution at the start pose.
  bool start_at_hover_currents = true;

  /// Throws ConfigError on invalid timing or parameters.
  void validate() const;
  int ticks() const;
  int substeps() const;
  int delay_ticks() const;
};

struct SimLogRow {
  double t = 0.0;
  RigidBodyState truth;
  Vec3 p_est = Vec3::Zero();
  Vec3 v_est = Vec3::Zero();
  Mat3 R_est = Mat3::Identity();
  Vec3 omega_est = Vec3::Zero();
  Setpoint setpoint;
  ReducedWrench wrench_cmd;
  Vec8 i_unsaturated = Vec8::Zero();
  Vec8 i_cmd = Vec8::Zero();     // setpoints sent to the drivers
  Vec8 i_actual = Vec8::Zero();  // coil currents at the start of the tick
  unsigned sat_mask = 0;
  double allocation_residual = 0.0;  // ||N i_unsat - w|| / ||w||
  bool allocation_failed = false;
};

struct SimLog {
  double controller_period = 0.0;
  std::vector<SimLogRow> rows;
  bool diverged = false;
  double divergence_time = 0.0;
  std::string divergence_reason;
  int allocation_failures = 0;
  std::array<LqrDesign, 3> designs{};
};

/// Closed-loop run: delayed noisy sensing, backward-difference estimation,
/// reduced-attitude and LQR control, allocation at the estimated pose,
/// saturation, then zero-order-hold setpoints driving lagged coil currents
/// and the rigid body at the true pose. Deterministic for a given seed.
///
/// If the reduced allocation matrix is singular at the estimated pose the
/// previous setpoints are held and the tick is flagged.
SimLog run_closed_loop(const SimConfig& config);

struct SimSummary {
  Vec3 position_rms = Vec3::Zero();  // m, true position minus setpoint
  double attitude_rms = 0.0;         // rad, angle between Gamma and Gamma_des
  double max_abs_current = 0.0;      // A, commanded
  double saturation_fraction = 0.0;  // ticks with any clamped coil
  int ticks = 0;
  bool diverged = false;
};

SimSummary summarize(const SimLog& log);

}  // namespace maglev::sim

#endif  // MAGLEV_SIM_CLOSED_LOOP_HPP_
