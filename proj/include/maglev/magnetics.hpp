#ifndef MAGLEV_MAGNETICS_HPP_
#define MAGLEV_MAGNETICS_HPP_

#include "maglev/field_model.hpp"

namespace maglev {

using Mat5x8 = Eigen::Matrix<double, 5, 8>;
using Mat6x8 = Eigen::Matrix<double, 6, 8>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

/// Remanence assumed for N52 NdFeB, T.
inline constexpr double kN52Remanence = 1.45;

/// Net magnet volume of the reference levitator: two 5 mm x 10 mm discs, m³.
inline constexpr double kReferenceMagnetVolume =
    2.0 * std::numbers::pi * 0.0025 * 0.0025 * 0.010;

/// Dipole strength of the reference levitator, A·m² (about 0.4531).
inline constexpr double kReferenceDipoleStrength =
    kN52Remanence * kReferenceMagnetVolume / kMu0;

struct LevitatorParams {
  double mass = 0.0324;                                 // kg
  Vec3 inertia = Vec3(6.21e-6, 5.63e-6, 1.14e-6);       // kg·m², principal
  Vec3 dipole_body = Vec3(0.0, 0.0, -kReferenceDipoleStrength);  // A·m², body
  double current_limit = 4.0;                           // A

  /// Throws ConfigError on non-positive mass, inertia or current limit.
  void validate() const;
};

/// The 32.4 g reference levitator with dipole -m̄ e_z, m̄ = B_r V / mu0.
LevitatorParams reference_levitator(double remanence = kN52Remanence);

/// Controllable wrench: body-frame torques about x and y, world-frame force.
struct ReducedWrench {
  Vec2 torque_xy = Vec2::Zero();  // N·m
  Vec3 force = Vec3::Zero();      // N

  Vec5 stacked() const;
  static ReducedWrench from_stacked(const Vec5& w);
};

/// m̄ = B_r V / mu0, A·m².
double dipole_strength(double remanence, double volume);

/// [m^B]x R^T: world field to body-frame torque. Throws InvalidRotationError.
Mat3 torque_map(const Mat3& R, const Vec3& dipole_body);

/// Gradient5 to world-frame force on a dipole with world-frame moment m.
Mat3x5 force_map(const Vec3& dipole_world);

/// Magnetic interaction matrix: (field; Gradient5) -> (body torque; world force).
Eigen::Matrix<double, 6, 8> interaction_matrix(const Mat3& R, const Vec3& dipole_body);

/// Currents -> (body torque; world force).
Mat6x8 allocation_matrix(const FieldModel& model, const Mat3& R, const Vec3& p,
                         const Vec3& dipole_body);

/// Interaction matrix without the uncontrollable torque about the dipole axis.
/// Throws std::invalid_argument unless dipole_body is along body z.
Eigen::Matrix<double, 5, 8> reduced_interaction_matrix(const Mat3& R, const Vec3& dipole_body);

/// Currents -> (body tau_x, tau_y; world force).
Mat5x8 reduced_allocation_matrix(const FieldModel& model, const Mat3& R, const Vec3& p,
                                 const Vec3& dipole_body);

/// Full wrench (body torque; world force) for given currents at a pose.
Vec6 magnetic_wrench(const FieldModel& model, const Mat3& R, const Vec3& p,
                     const Vec3& dipole_body, const Vec8& currents);

}  // namespace maglev

#endif  // MAGLEV_MAGNETICS_HPP_
