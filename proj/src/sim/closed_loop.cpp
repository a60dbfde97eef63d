#include "maglev/sim/closed_loop.hpp"

#include <cmath>
#include <sstream>

#include "maglev/allocation.hpp"
#include "maglev/sim/driver.hpp"
#include "maglev/sim/estimation.hpp"
#include "maglev/sim/sensor.hpp"
#include "maglev/so3.hpp"

namespace maglev::sim {

namespace {

// Integer ratio a / b, or -1 when a is not an integer multiple of b.
int integer_ratio(double a, double b) {
  const double ratio = a / b;
  const double rounded = std::round(ratio);
  return std::abs(ratio - rounded) < 1e-9 * std::max(1.0, rounded) ? static_cast<int>(rounded)
                                                                     : -1;
}

std::array<LqrDesign, 3> design_translation(const SimConfig& config) {
  const ControllerGains& g = config.gains;
  const double period = g.design_period > 0.0 ? g.design_period : config.controller_period;
  const AxisModel model = discretize_axis(config.levitator.mass, period);
  const Normalization n =
      nominal_normalization(config.levitator.mass, g.xi, g.velocity_factor, g.input_factor);
  std::array<LqrDesign, 3> designs;
  for (std::size_t axis = 0; axis < 3; ++axis) {
    designs[axis] = design_axis_lqr(model, g.Q[axis], g.rho, n);
  }
  return designs;
}

}  // namespace

void SimConfig::validate() const {
  if (!(controller_period > 0.0)) throw ConfigError("sim.Ts must be positive");
  if (!(physics_step > 0.0) || physics_step > 1e-2) {
    throw ConfigError("sim.physics_step must lie in (0, 0.01] s");
  }
  if (integer_ratio(controller_period, physics_step) < 1) {
    throw ConfigError("sim.physics_step must divide sim.Ts");
  }
  if (!(loop_delay >= 0.0) || integer_ratio(loop_delay, controller_period) < 0) {
    throw ConfigError("sim.delay must be a non-negative integer multiple of sim.Ts");
  }
  if (!(duration > 0.0)) throw ConfigError("sim.duration must be positive");
  if (!(corner_frequency > 0.0)) throw ConfigError("sim.fc must be positive");
  if (pos_noise_std < 0.0 || att_noise_std < 0.0) {
    throw ConfigError("sim.noise standard deviations must be non-negative");
  }
  levitator.validate();
  gains.attitude.validate();
  if (!(gains.rho > 0.0)) throw ConfigError("gains.translation.rho must be positive");
  if (!(gains.xi > 0.0)) throw ConfigError("gains.translation.xi must be positive");
  if (!so3::is_rotation(initial_state.R)) throw ConfigError("initial attitude is not a rotation");
}

int SimConfig::ticks() const {
  return static_cast<int>(std::llround(duration / controller_period));
}

int SimConfig::substeps() const { return integer_ratio(controller_period, physics_step); }

int SimConfig::delay_ticks() const { return integer_ratio(loop_delay, controller_period); }

SimLog run_closed_loop(const SimConfig& config) {
  config.validate();
  const double Ts = config.controller_period;
  const double h = config.physics_step;
  const int substeps = config.substeps();
  const LevitatorParams& lev = config.levitator;
  const FieldModel& model = config.field_model;

  SimLog log;
  log.controller_period = Ts;
  log.designs = design_translation(config);
  log.rows.reserve(static_cast<std::size_t>(config.ticks()));

  TranslationGains translation;
  translation.axes = log.designs;
  translation.ki = config.gains.integrators ? config.gains.ki : Vec3::Zero();
  translation.mass = lev.mass;
  translation.gravity = config.gravity;
  AttitudeGains attitude = config.gains.attitude;
  if (!config.gains.integrators) attitude.ki = 0.0;

  PoseSensor sensor(config.delay_ticks(), config.pos_noise_std, config.att_noise_std,
                    config.seed);

  RigidBodyState state = config.initial_state;
  Vec8 i_actual = Vec8::Zero();
  if (config.start_at_hover_currents) {
    try {
      i_actual = saturate(hover_currents(model, lev, state.R, state.p, config.gravity),
                          lev.current_limit)
                     .currents;
    } catch (const AllocationError&) {
      i_actual.setZero();
    }
  }
  Vec8 i_cmd = i_actual;
  Vec2 att_integral = Vec2::Zero();
  Vec3 pos_integral = Vec3::Zero();
  Pose previous_estimate;
  bool have_previous = false;

  const int ticks = config.ticks();
  for (int k = 0; k < ticks; ++k) {
    SimLogRow row;
    row.t = k * Ts;
    row.truth = state;
    row.i_actual = i_actual;

    const Pose measured = sensor.measure({state.p, state.R});
    const Pose& prev = have_previous ? previous_estimate : measured;
    row.p_est = measured.p;
    row.R_est = measured.R;
    row.v_est = estimate_velocity(measured.p, prev.p, Ts);
    row.omega_est = estimate_body_rate(measured.R, prev.R, Ts);
    previous_estimate = measured;
    have_previous = true;

    row.setpoint = trajectory(row.t, config.trajectory);

    const AttitudeCommand att =
        attitude_control(measured.R, row.omega_est.head<2>(), row.setpoint.gamma_des, attitude,
                         att_integral, Ts, lev.inertia);
    att_integral = att.integral;
    const TranslationCommand trans =
        translation_control(measured.p, row.v_est, row.setpoint.p_des, row.setpoint.v_des,
                            translation, pos_integral, Ts);
    pos_integral = trans.integral;
    row.wrench_cmd = {att.torque_xy, trans.force};

    try {
      const Mat5x8 N = reduced_allocation_matrix(model, measured.R, measured.p, lev.dipole_body);
      row.i_unsaturated = solve_currents(N, row.wrench_cmd);
      const Vec5 w = row.wrench_cmd.stacked();
      row.allocation_residual =
          w.norm() > 0.0 ? (N * row.i_unsaturated - w).norm() / w.norm() : 0.0;
      const SaturatedCurrents sat = saturate(row.i_unsaturated, lev.current_limit);
      i_cmd = sat.currents;
      row.sat_mask = sat.mask();
    } catch (const AllocationError&) {
      row.allocation_failed = true;
      row.i_unsaturated = i_cmd;
      ++log.allocation_failures;
    } catch (const SingularityError&) {
      row.allocation_failed = true;
      row.i_unsaturated = i_cmd;
      ++log.allocation_failures;
    }
    row.i_cmd = i_cmd;
    log.rows.push_back(row);

    try {
      for (int s = 0; s < substeps; ++s) {
        const Vec6 wrench = magnetic_wrench(model, state.R, state.p, lev.dipole_body, i_actual);
        state = step(state, wrench.head<2>(), wrench.tail<3>() + config.disturbance_force, lev, h,
                     config.gravity);
        i_actual = driver_step(i_actual, i_cmd, config.corner_frequency, h);
      }
    } catch (const SingularityError& e) {
      log.diverged = true;
      log.divergence_time = (k + 1) * Ts;
      log.divergence_reason = e.what();
      break;
    }

    if (!state.p.allFinite() || state.p.norm() > config.divergence_position) {
      log.diverged = true;
      log.divergence_time = (k + 1) * Ts;
      log.divergence_reason = "position left the workspace";
      break;
    }
    if (!state.omega_body.allFinite() || state.omega_body.norm() > config.divergence_rate) {
      log.diverged = true;
      log.divergence_time = (k + 1) * Ts;
      log.divergence_reason = "angular rate exceeded limit";
      break;
    }
  }
  return log;
}

SimSummary summarize(const SimLog& log) {
  SimSummary s;
  s.ticks = static_cast<int>(log.rows.size());
  s.diverged = log.diverged;
  if (log.rows.empty()) return s;
  Vec3 sq = Vec3::Zero();
  double att_sq = 0.0;
  int saturated = 0;
  for (const auto& row : log.rows) {
    sq += (row.truth.p - row.setpoint.p_des).cwiseAbs2();
    const double angle = ReducedAttitude{row.truth.R.col(2)}.angle_to(row.setpoint.gamma_des);
    att_sq += angle * angle;
    s.max_abs_current = std::max(s.max_abs_current, row.i_cmd.cwiseAbs().maxCoeff());
    if (row.sat_mask != 0) ++saturated;
  }
  const double n = static_cast<double>(log.rows.size());
  s.position_rms = (sq / n).cwiseSqrt();
  s.attitude_rms = std::sqrt(att_sq / n);
  s.saturation_fraction = saturated / n;
  return s;
}

}  // namespace maglev::sim
