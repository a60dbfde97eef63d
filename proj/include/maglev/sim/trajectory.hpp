#ifndef MAGLEV_SIM_TRAJECTORY_HPP_
#define MAGLEV_SIM_TRAJECTORY_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "maglev/types.hpp"

namespace maglev::sim {

enum class TrajectoryKind { kHover, kAttitudeSteps, kFigureEight, kPositionSteps };

/// Throws ConfigError naming the kind when it is not recognized.
TrajectoryKind parse_trajectory_kind(std::string_view name);
std::string_view to_string(TrajectoryKind kind);

struct AttitudeStep {
  double t_start = 0.0;  // s
  double roll = 0.0;     // rad
  double pitch = 0.0;    // rad
};

struct PositionStep {
  double t_start = 0.0;
  Vec3 position = Vec3::Zero();
};

struct TrajectorySpec {
  TrajectoryKind kind = TrajectoryKind::kHover;
  Vec3 center = Vec3::Zero();  // hover point, figure-eight center
  double amplitude_x = 0.010;  // m
  double amplitude_y = 0.005;  // m
  double period = 10.0;        // s
  std::vector<AttitudeStep> attitude_steps;
  std::vector<PositionStep> position_steps;
};

/// 45 deg roll then pitch steps, each returning to level before the sign flips:
/// 0, +roll, 0, -roll, 0, +pitch, 0, -pitch, 0, each held for `hold` seconds.
std::vector<AttitudeStep> default_attitude_steps(double hold = 2.0);

struct Setpoint {
  Vec3 p_des = Vec3::Zero();
  Vec3 v_des = Vec3::Zero();
  Vec3 gamma_des = Vec3::UnitZ();
};

/// Reduced attitude commanded by roll/pitch (XYZ intrinsic, zero yaw).
Vec3 gamma_from_roll_pitch(double roll, double pitch);

Setpoint trajectory(double t, const TrajectorySpec& spec);

}  // namespace maglev::sim

#endif  // MAGLEV_SIM_TRAJECTORY_HPP_
