#include "maglev/sim/trajectory.hpp"

#include <cmath>

#include "maglev/so3.hpp"

namespace maglev::sim {

TrajectoryKind parse_trajectory_kind(std::string_view name) {
  if (name == "hover") return TrajectoryKind::kHover;
  if (name == "attitude_steps") return TrajectoryKind::kAttitudeSteps;
  if (name == "figure_eight") return TrajectoryKind::kFigureEight;
  if (name == "position_steps") return TrajectoryKind::kPositionSteps;
  throw ConfigError("unknown trajectory kind '" + std::string(name) + "'");
}

std::string_view to_string(TrajectoryKind kind) {
  switch (kind) {
    case TrajectoryKind::kHover: return "hover";
    case TrajectoryKind::kAttitudeSteps: return "attitude_steps";
    case TrajectoryKind::kFigureEight: return "figure_eight";
    case TrajectoryKind::kPositionSteps: return "position_steps";
  }
  return "unknown";
}

std::vector<AttitudeStep> default_attitude_steps(double hold) {
  constexpr double k45 = std::numbers::pi / 4.0;
  return {{0.0, 0.0, 0.0},       {hold, k45, 0.0},      {2 * hold, 0.0, 0.0},
          {3 * hold, -k45, 0.0}, {4 * hold, 0.0, 0.0},  {5 * hold, 0.0, k45},
          {6 * hold, 0.0, 0.0},  {7 * hold, 0.0, -k45}, {8 * hold, 0.0, 0.0}};
}

Vec3 gamma_from_roll_pitch(double roll, double pitch) {
  return so3::from_euler_xyz(roll, pitch, 0.0).col(2);
}

Setpoint trajectory(double t, const TrajectorySpec& spec) {
  Setpoint sp;
  sp.p_des = spec.center;
  switch (spec.kind) {
    case TrajectoryKind::kHover:
      break;
    case TrajectoryKind::kAttitudeSteps:
      for (const auto& step : spec.attitude_steps) {
        if (t >= step.t_start) sp.gamma_des = gamma_from_roll_pitch(step.roll, step.pitch);
      }
      break;
    case TrajectoryKind::kFigureEight: {
      const double w = 2.0 * std::numbers::pi / spec.period;
      sp.p_des += Vec3(spec.amplitude_x * std::sin(w * t), spec.amplitude_y * std::sin(2 * w * t),
                       0.0);
      sp.v_des = Vec3(spec.amplitude_x * w * std::cos(w * t),
                      spec.amplitude_y * 2 * w * std::cos(2 * w * t), 0.0);
      break;
    }
    case TrajectoryKind::kPositionSteps:
      for (const auto& step : spec.position_steps) {
        if (t >= step.t_start) sp.p_des = step.position;
      }
      break;
  }
  return sp;
}

}  // namespace maglev::sim
