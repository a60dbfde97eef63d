#ifndef MAGLEV_SIM_STIFFNESS_HPP_
#define MAGLEV_SIM_STIFFNESS_HPP_

#include <optional>

#include "maglev/field_model.hpp"
#include "maglev/magnetics.hpp"

namespace maglev::sim {

struct StiffnessReport {
  Mat3 K = Mat3::Zero();             // df/dp at fixed currents and attitude, N/m
  Vec3 eigenvalues = Vec3::Zero();   // ascending
  Mat3 eigenvectors = Mat3::Zero();  // columns match eigenvalues
  double k_max = 0.0;                // largest eigenvalue; > 0 is unstable
  std::optional<double> divergence_time_constant;  // sqrt(m / k_max), s
  double force_residual = 0.0;       // |f_mag - m g e_z| at the pose, N
};

/// Open-loop positional stiffness of the levitator held by fixed currents.
/// Central differences with base step h, Richardson-extrapolated (h and 2h).
///
/// Throws std::invalid_argument if the currents do not balance gravity to
/// within 1e-6 N.
StiffnessReport stiffness_analysis(const FieldModel& model, const LevitatorParams& params,
                                   const Mat3& R, const Vec3& p, const Vec8& hover_currents,
                                   double gravity = kStandardGravity, double h = 1e-5);

}  // namespace maglev::sim

#endif  // MAGLEV_SIM_STIFFNESS_HPP_
