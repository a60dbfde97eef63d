#include "maglev/magnetics.hpp"

#include <cmath>
#include <stdexcept>

#include "maglev/so3.hpp"

namespace maglev {

void LevitatorParams::validate() const {
  if (!(mass > 0.0)) throw ConfigError("levitator mass must be positive");
  if (!(inertia.minCoeff() > 0.0)) throw ConfigError("levitator inertia must be positive");
  if (!(current_limit > 0.0)) throw ConfigError("current limit must be positive");
  if (!dipole_body.allFinite()) throw ConfigError("levitator dipole must be finite");
}

LevitatorParams reference_levitator(double remanence) {
  LevitatorParams params;
  params.dipole_body = Vec3(0.0, 0.0, -dipole_strength(remanence, kReferenceMagnetVolume));
  return params;
}

Vec5 ReducedWrench::stacked() const {
  Vec5 w;
  w << torque_xy, force;
  return w;
}

ReducedWrench ReducedWrench::from_stacked(const Vec5& w) {
  return {w.head<2>(), w.tail<3>()};
}

double dipole_strength(double remanence, double volume) {
  if (remanence < 0.0 || volume < 0.0) {
    throw std::invalid_argument("dipole_strength: remanence and volume must be non-negative");
  }
  return remanence * volume / kMu0;
}

Mat3 torque_map(const Mat3& R, const Vec3& dipole_body) {
  so3::require_rotation(R);
  return so3::skew(dipole_body) * R.transpose();
}

Mat3x5 force_map(const Vec3& m) {
  Mat3x5 M;
  M << m.x(), m.y(), m.z(), 0.0, 0.0,
       0.0, m.x(), 0.0, m.y(), m.z(),
       -m.z(), 0.0, m.x(), -m.z(), m.y();
  return M;
}

Eigen::Matrix<double, 6, 8> interaction_matrix(const Mat3& R, const Vec3& dipole_body) {
  Eigen::Matrix<double, 6, 8> M = Eigen::Matrix<double, 6, 8>::Zero();
  M.block<3, 3>(0, 0) = torque_map(R, dipole_body);
  M.block<3, 5>(3, 3) = force_map(R * dipole_body);
  return M;
}

Mat6x8 allocation_matrix(const FieldModel& model, const Mat3& R, const Vec3& p,
                         const Vec3& dipole_body) {
  return interaction_matrix(R, dipole_body) * model.actuation_matrix(p);
}

Eigen::Matrix<double, 5, 8> reduced_interaction_matrix(const Mat3& R, const Vec3& dipole_body) {
  const double moment = dipole_body.norm();
  if (!(moment > 0.0) || dipole_body.head<2>().norm() > 1e-12 * moment) {
    throw std::invalid_argument("reduced maps require a dipole along body z");
  }
  so3::require_rotation(R);
  Eigen::Matrix<double, 5, 8> M = Eigen::Matrix<double, 5, 8>::Zero();
  // Rows x and y of [m^B]x; for m^B = -m̄ e_z this is [[0, m̄, 0], [-m̄, 0, 0]].
  M.block<2, 3>(0, 0) = so3::skew(dipole_body).topRows<2>() * R.transpose();
  M.block<3, 5>(2, 3) = force_map(R * dipole_body);
  return M;
}

Mat5x8 reduced_allocation_matrix(const FieldModel& model, const Mat3& R, const Vec3& p,
                                 const Vec3& dipole_body) {
  return reduced_interaction_matrix(R, dipole_body) * model.actuation_matrix(p);
}

Vec6 magnetic_wrench(const FieldModel& model, const Mat3& R, const Vec3& p,
                     const Vec3& dipole_body, const Vec8& currents) {
  const Vec3 b = model.field(p, currents);
  const Gradient5 g = model.gradient(p, currents);
  Vec6 w;
  w.head<3>() = dipole_body.cross(R.transpose() * b);
  w.tail<3>() = force_map(R * dipole_body) * g.g;
  return w;
}

}  // namespace maglev
